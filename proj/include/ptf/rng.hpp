#pragma once

#include <cmath>
#include <cstdint>

namespace ptf {

// Counter-based random stream. Every (seed, stream) pair yields an
// independent reproducible sequence, so a Monte Carlo loop that assigns
// stream = sample index produces the same totals for any thread count or
// iteration order.
class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t stream)
        : state_(finalize(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return finalize(state_);
    }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double next_unit_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

    bool next_bernoulli(double p) { return next_unit() < p; }

    // standard normal via Box-Muller; the paired value is cached
    double next_gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = next_unit_open();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

private:
    static uint64_t finalize(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Derives a fresh seed for a nested stochastic computation (e.g. the inner
// bias estimate of one restriction trial).
inline uint64_t derive_seed(uint64_t seed, uint64_t salt) {
    RandomStream s(seed ^ 0xA5A5A5A55A5A5A5AULL, salt);
    return s.next_u64();
}

}  // namespace ptf
