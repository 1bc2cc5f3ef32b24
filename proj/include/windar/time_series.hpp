#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "windar/errors.hpp"

namespace windar {

// An ordered run of real-valued samples, e.g. wind farm output in MW.
// Construction rejects empty input and non-finite samples; the optional
// sampling interval and label are opaque metadata.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<double> values,
                        std::optional<double> sample_interval_seconds = {},
                        std::optional<std::string> label = {})
        : values_(std::move(values)),
          sample_interval_seconds_(sample_interval_seconds),
          label_(std::move(label)) {
        if (values_.empty()) throw EmptySeries();
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) throw NonFiniteSample(i);
        }
    }

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    const std::optional<double>& sample_interval_seconds() const noexcept {
        return sample_interval_seconds_;
    }
    const std::optional<std::string>& label() const noexcept { return label_; }

    double mean() const {
        long double sum = 0.0L;
        for (double v : values_) sum += v;
        return static_cast<double>(sum / static_cast<long double>(values_.size()));
    }

private:
    std::vector<double> values_;
    std::optional<double> sample_interval_seconds_;
    std::optional<std::string> label_;
};

inline TimeSeries validate_series(std::vector<double> raw) { return TimeSeries(std::move(raw)); }

// Removes the sample mean. Returns the centered series together with the
// removed mean so the original is recoverable by adding it back.
inline std::pair<TimeSeries, double> demean(const TimeSeries& series) {
    const double m = series.mean();
    std::vector<double> centered(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) centered[i] = series[i] - m;
    return {TimeSeries(std::move(centered), series.sample_interval_seconds(), series.label()), m};
}

}  // namespace windar
