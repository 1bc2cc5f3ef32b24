#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "windar/ar_model.hpp"
#include "windar/time_series.hpp"

namespace testutil {

// The synthetic AR(2) realization used across the suite:
// x_t = 0.6 x_{t-1} - 0.3 x_{t-2} + e_t, unit-variance Gaussian noise.
inline const std::vector<double> kAr2Coefficients{0.6, -0.3};

inline windar::TimeSeries ar2_fixture(std::size_t n, std::uint64_t seed) {
    windar::ArModel model{kAr2Coefficients, 0.0, 1.0};
    return windar::simulate_ar(model, n, 1.0, seed, /*warmup=*/500);
}

inline windar::TimeSeries white_noise(std::size_t n, std::uint64_t seed) {
    windar::ArModel model{{}, 0.0, 1.0};
    return windar::simulate_ar(model, n, 1.0, seed);
}

// Unique scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("windar_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace testutil
