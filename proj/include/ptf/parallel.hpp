#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ptf::par {

inline int resolve_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) return threads;
    return omp_get_max_threads();
#else
    (void)threads;
    return 1;
#endif
}

// All reductions below split [0, count) into fixed-size blocks, accumulate
// each block serially in index order, and combine block results in block
// order. The result is therefore independent of the thread count.
inline constexpr uint64_t kBlock = uint64_t{1} << 13;

template <class F>
double sum_indexed(uint64_t count, int threads, F&& term) {
    if (count == 0) return 0.0;
    const uint64_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
        const uint64_t lo = static_cast<uint64_t>(b) * kBlock;
        const uint64_t hi = lo + kBlock < count ? lo + kBlock : count;
        double acc = 0.0;
        for (uint64_t i = lo; i < hi; ++i) acc += term(i);
        partial[static_cast<size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

template <class F>
uint64_t count_indexed(uint64_t count, int threads, F&& pred) {
    if (count == 0) return 0;
    const uint64_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<uint64_t> partial(nblocks, 0);
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
        const uint64_t lo = static_cast<uint64_t>(b) * kBlock;
        const uint64_t hi = lo + kBlock < count ? lo + kBlock : count;
        uint64_t acc = 0;
        for (uint64_t i = lo; i < hi; ++i) acc += pred(i) ? 1 : 0;
        partial[static_cast<size_t>(b)] = acc;
    }
    uint64_t total = 0;
    for (uint64_t v : partial) total += v;
    return total;
}

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
    uint64_t n = 0;
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double sample_variance() const {
        if (n < 2) return 0.0;
        const double m = mean();
        double v = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return v > 0.0 ? v : 0.0;
    }
};

template <class F>
Moments moments_indexed(uint64_t count, int threads, F&& value) {
    Moments out;
    out.n = count;
    if (count == 0) return out;
    const uint64_t nblocks = (count + kBlock - 1) / kBlock;
    std::vector<double> psum(nblocks, 0.0), psq(nblocks, 0.0);
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
        const uint64_t lo = static_cast<uint64_t>(b) * kBlock;
        const uint64_t hi = lo + kBlock < count ? lo + kBlock : count;
        double s = 0.0, q = 0.0;
        for (uint64_t i = lo; i < hi; ++i) {
            const double v = value(i);
            s += v;
            q += v * v;
        }
        psum[static_cast<size_t>(b)] = s;
        psq[static_cast<size_t>(b)] = q;
    }
    for (uint64_t b = 0; b < nblocks; ++b) {
        out.sum += psum[b];
        out.sum_sq += psq[b];
    }
    return out;
}

template <class F>
void for_indexed(uint64_t count, int threads, F&& fn) {
    const int nt = resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) fn(static_cast<uint64_t>(i));
}

}  // namespace ptf::par
