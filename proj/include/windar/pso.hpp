#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "windar/errors.hpp"
#include "windar/rng.hpp"

namespace windar {

enum class VelocityRule { InertiaWeight, ConstrictionFactor };
enum class Termination { MaxIterations, Stalled };

// Clerc-Kennedy constriction coefficient
//   k = 2 / |2 - phi - sqrt(phi^2 - 4 phi)|,  phi = c1 + c2 > 4.
// With the customary c1 = c2 = 2.05 this evaluates to 0.7298.
inline double constriction_factor(double c1, double c2) {
    const double phi = c1 + c2;
    if (!(phi > 4.0)) throw PhiOutOfRange(phi);
    return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

struct PsoConfig {
    std::size_t dimension = 1;
    std::size_t swarm_size = 30;
    double c1 = 2.05;  // cognitive (self-influence) coefficient
    double c2 = 2.05;  // social coefficient
    double inertia_weight = 0.7298;  // used by the InertiaWeight rule only
    VelocityRule velocity_rule = VelocityRule::ConstrictionFactor;
    std::size_t max_iterations = 100;
    double stall_tolerance = 1e-3;  // relative improvement below this counts as stalled
    std::size_t stall_window = 20;  // consecutive stalled iterations before stopping
    std::vector<double> lower_bounds;  // one entry per dimension
    std::vector<double> upper_bounds;
    std::uint64_t rng_seed = 0;
    // Optional positions injected as the first particles (e.g. a known
    // good solution); each must lie within bounds.
    std::vector<std::vector<double>> seed_positions;

    void validate() const {
        if (dimension < 1) throw ConfigError("dimension must be at least 1");
        if (swarm_size < 2) throw ConfigError("swarm size must be at least 2");
        if (!(c1 > 0.0) || !(c2 > 0.0)) throw ConfigError("c1 and c2 must be positive");
        if (!(inertia_weight > 0.0)) throw ConfigError("inertia weight must be positive");
        if (velocity_rule == VelocityRule::ConstrictionFactor && !(c1 + c2 > 4.0))
            throw PhiOutOfRange(c1 + c2);
        if (max_iterations < 1) throw ConfigError("max iterations must be at least 1");
        if (!(stall_tolerance > 0.0)) throw ConfigError("stall tolerance must be positive");
        if (stall_window < 1) throw ConfigError("stall window must be at least 1");
        if (lower_bounds.size() != dimension || upper_bounds.size() != dimension)
            throw ConfigError("bounds must have one entry per dimension");
        for (std::size_t d = 0; d < dimension; ++d) {
            if (!(lower_bounds[d] < upper_bounds[d]))
                throw ConfigError("lower bound must be below upper bound in dimension "
                                  + std::to_string(d));
        }
        if (seed_positions.size() > swarm_size)
            throw ConfigError("more seed positions than particles");
        for (const auto& pos : seed_positions) {
            if (pos.size() != dimension)
                throw ConfigError("seed position dimension mismatch");
            for (std::size_t d = 0; d < dimension; ++d) {
                if (pos[d] < lower_bounds[d] || pos[d] > upper_bounds[d])
                    throw ConfigError("seed position outside bounds in dimension "
                                      + std::to_string(d));
            }
        }
    }
};

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_value = std::numeric_limits<double>::infinity();
};

struct Swarm {
    std::vector<Particle> particles;
    std::vector<double> best_position;
    double best_value = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;
    std::vector<double> trace;  // best value after initialization and after each step
    Rng rng;
};

namespace detail {

template <typename F>
double evaluate_checked(F&& objective, std::span<const double> position) {
    const double value = objective(position);
    if (!std::isfinite(value)) throw ObjectiveNonFinite();
    return value;
}

}  // namespace detail

// Builds the initial swarm: positions uniform over the bounded box (seed
// positions injected verbatim as the first particles), velocities zero,
// personal and global bests taken from the initial objective values.
// Deterministic for a fixed rng_seed.
template <typename F>
Swarm initialize_swarm(const PsoConfig& config, F&& objective) {
    config.validate();
    Swarm swarm;
    swarm.rng = Rng(config.rng_seed);
    swarm.particles.resize(config.swarm_size);
    for (std::size_t p = 0; p < config.swarm_size; ++p) {
        Particle& particle = swarm.particles[p];
        particle.position.resize(config.dimension);
        if (p < config.seed_positions.size()) {
            particle.position = config.seed_positions[p];
        } else {
            for (std::size_t d = 0; d < config.dimension; ++d)
                particle.position[d] =
                    swarm.rng.uniform(config.lower_bounds[d], config.upper_bounds[d]);
        }
        particle.velocity.assign(config.dimension, 0.0);
        particle.best_position = particle.position;
        particle.best_value = detail::evaluate_checked(objective, particle.position);
        if (particle.best_value < swarm.best_value) {
            swarm.best_value = particle.best_value;
            swarm.best_position = particle.best_position;
        }
    }
    swarm.trace.push_back(swarm.best_value);
    return swarm;
}

// Advances the swarm by one iteration: velocities via the configured rule
// with fresh r1, r2 drawn per dimension, positions clamped to the bounds,
// then personal and global bests refreshed in particle-index order.
template <typename F>
void step(Swarm& swarm, const PsoConfig& config, F&& objective) {
    // global best frozen at iteration start, so per-particle updates are
    // order-independent and could be evaluated concurrently
    const std::vector<double> gbest = swarm.best_position;
    const double k = config.velocity_rule == VelocityRule::ConstrictionFactor
                         ? constriction_factor(config.c1, config.c2)
                         : 0.0;

    for (Particle& particle : swarm.particles) {
        for (std::size_t d = 0; d < config.dimension; ++d) {
            const double r1 = swarm.rng.uniform01();
            const double r2 = swarm.rng.uniform01();
            const double pull = r1 * config.c1 * (particle.best_position[d] - particle.position[d])
                                + r2 * config.c2 * (gbest[d] - particle.position[d]);
            const double v = config.velocity_rule == VelocityRule::ConstrictionFactor
                                 ? k * (particle.velocity[d] + pull)
                                 : config.inertia_weight * particle.velocity[d] + pull;
            particle.velocity[d] = v;
            particle.position[d] = std::clamp(particle.position[d] + v, config.lower_bounds[d],
                                              config.upper_bounds[d]);
        }
        const double value = detail::evaluate_checked(objective, particle.position);
        if (value < particle.best_value) {
            particle.best_value = value;
            particle.best_position = particle.position;
        }
    }
    for (const Particle& particle : swarm.particles) {
        if (particle.best_value < swarm.best_value) {
            swarm.best_value = particle.best_value;
            swarm.best_position = particle.best_position;
        }
    }
    ++swarm.iteration;
    swarm.trace.push_back(swarm.best_value);
}

struct OptimizeResult {
    std::vector<double> best_position;
    double best_value = 0.0;
    std::vector<double> trace;
    std::size_t iterations_used = 0;
    Termination termination = Termination::MaxIterations;
};

// Runs the swarm until the iteration cap, or until the relative
// improvement of the global best stays below stall_tolerance for
// stall_window consecutive iterations.
template <typename F>
OptimizeResult optimize(const PsoConfig& config, F&& objective) {
    Swarm swarm = initialize_swarm(config, objective);
    Termination termination = Termination::MaxIterations;
    std::size_t stalled = 0;
    std::size_t iterations = 0;
    while (iterations < config.max_iterations) {
        const double before = swarm.best_value;
        step(swarm, config, objective);
        ++iterations;
        const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
        if ((before - swarm.best_value) / scale < config.stall_tolerance)
            ++stalled;
        else
            stalled = 0;
        if (stalled >= config.stall_window) {
            termination = Termination::Stalled;
            break;
        }
    }
    return {std::move(swarm.best_position), swarm.best_value, std::move(swarm.trace), iterations,
            termination};
}

}  // namespace windar
