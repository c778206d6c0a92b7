#pragma once

#include <cmath>
#include <cstdint>

namespace ptf {

// Monte Carlo result. For estimators of bounded means the half-width follows
// the distribution-free Hoeffding rule at the declared confidence; estimators
// of unbounded means (norm estimates) use a 3-standard-error normal interval
// and declare confidence 0.9973.
struct Estimate {
    double value = 0.0;
    double half_width = 0.0;
    double confidence = 0.0;
    uint64_t samples = 0;
    uint64_t seed = 0;

    double lo() const { return value - half_width; }
    double hi() const { return value + half_width; }
    bool covers(double v) const { return lo() <= v && v <= hi(); }
};

// Hoeffding half-width for the mean of `samples` draws bounded in [0, 1].
inline double hoeffding_half_width(uint64_t samples, double confidence) {
    return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

}  // namespace ptf
