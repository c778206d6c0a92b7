#include "ptf/sensitivity.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ptf/parallel.hpp"
#include "ptf/rng.hpp"

namespace ptf::hypercube {

namespace {

void require_delta(double delta) {
    if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("delta must lie in (0, 1]");
}

void require_var(const uint32_t n, uint32_t i) {
    if (i >= n) throw std::invalid_argument("variable index out of range");
}

// Fills `x` with fair random words for an n-variable point.
void random_point(RandomStream& rs, uint32_t n, uint64_t* x, uint32_t words) {
    for (uint32_t w = 0; w < words; ++w) x[w] = rs.next_u64();
    const uint32_t rem = n % 64;
    if (rem != 0) x[words - 1] &= (uint64_t{1} << rem) - 1;
}

// XORs a delta-flip pattern into `x` using geometric gap skipping, cheap for
// small delta.
void apply_flips(RandomStream& rs, uint32_t n, uint64_t* x, double delta) {
    if (delta >= 1.0) {
        for (uint32_t w = 0; w < (n + 63) / 64; ++w) x[w] ^= ~uint64_t{0};
        const uint32_t rem = n % 64;
        if (rem != 0) x[(n + 63) / 64 - 1] &= (uint64_t{1} << rem) - 1;
        return;
    }
    const double log1m = std::log1p(-delta);
    uint64_t i = static_cast<uint64_t>(std::floor(std::log1p(-rs.next_unit()) / log1m));
    while (i < n) {
        x[i / 64] ^= uint64_t{1} << (i % 64);
        i += 1 + static_cast<uint64_t>(std::floor(std::log1p(-rs.next_unit()) / log1m));
    }
}

}  // namespace

double influence_exact(const TruthTable& t, uint32_t i, int threads) {
    require_var(t.n, i);
    const uint64_t bit = uint64_t{1} << i;
    const uint64_t flips = par::count_indexed(t.size(), threads,
                                              [&](uint64_t x) { return t.signs[x] != t.signs[x ^ bit]; });
    return std::ldexp(static_cast<double>(flips), -static_cast<int>(t.n));
}

std::vector<double> influences_exact(const TruthTable& t, int threads) {
    std::vector<double> out(t.n);
    for (uint32_t i = 0; i < t.n; ++i) out[i] = influence_exact(t, i, threads);
    return out;
}

double average_sensitivity_exact(const TruthTable& t, int threads) {
    const uint32_t n = t.n;
    if (n == 0) return 0.0;
    // One pass over all (point, coordinate) pairs.
    const uint64_t count = par::count_indexed(t.size() * n, threads, [&](uint64_t k) {
        const uint64_t x = k / n;
        const uint32_t i = static_cast<uint32_t>(k % n);
        return t.signs[x] != t.signs[x ^ (uint64_t{1} << i)];
    });
    return static_cast<double>(count) * std::ldexp(1.0, -static_cast<int>(n));
}

double influence_exact(const Ptf& f, uint32_t i, int threads) {
    return influence_exact(truth_table(f, threads), i, threads);
}

double average_sensitivity_exact(const Ptf& f, int threads) {
    return average_sensitivity_exact(truth_table(f, threads), threads);
}

SensitivitySummary sensitivity_fourier(const Spectrum& s, int threads) {
    const double parseval = s.parseval_sum();
    if (std::fabs(parseval - 1.0) > 1e-6)
        throw std::invalid_argument("spectrum violates Parseval for a +-1-valued function (sum " +
                                    format_double(parseval) + ")");
    SensitivitySummary out;
    out.influences.assign(s.n, 0.0);
    out.average_sensitivity = par::sum_indexed(s.coeffs.size(), threads, [&](uint64_t mask) {
        return static_cast<double>(std::popcount(mask)) * s.coeffs[mask] * s.coeffs[mask];
    });
    for (uint32_t i = 0; i < s.n; ++i) {
        const uint64_t bit = uint64_t{1} << i;
        out.influences[i] = par::sum_indexed(s.coeffs.size(), threads, [&](uint64_t mask) {
            return (mask & bit) ? s.coeffs[mask] * s.coeffs[mask] : 0.0;
        });
    }
    return out;
}

double ns_exact_direct(const TruthTable& t, double delta, int threads) {
    require_delta(delta);
    const uint32_t n = t.n;
    if (static_cast<int>(n) > brute_limit())
        throw std::invalid_argument("direct noise-sensitivity path is capped at n <= " +
                                    std::to_string(brute_limit()));
    // Pattern weight depends only on popcount.
    std::vector<double> w(n + 1);
    for (uint32_t k = 0; k <= n; ++k)
        w[k] = std::pow(delta, static_cast<double>(k)) * std::pow(1.0 - delta, static_cast<double>(n - k));
    const uint64_t cube = t.size();
    const double sum = par::sum_indexed(cube * cube, threads, [&](uint64_t idx) {
        const uint64_t x = idx >> n;
        const uint64_t m = idx & (cube - 1);
        return t.signs[x] != t.signs[x ^ m] ? w[std::popcount(m)] : 0.0;
    });
    return sum * std::ldexp(1.0, -static_cast<int>(n));
}

double ns_exact_spectrum(const Spectrum& s, double delta) {
    require_delta(delta);
    std::vector<double> level(s.n + 1, 0.0);
    for (uint64_t mask = 0; mask < s.coeffs.size(); ++mask)
        level[std::popcount(mask)] += s.coeffs[mask] * s.coeffs[mask];
    const double rho = 1.0 - 2.0 * delta;
    double stay = 0.0;
    for (uint32_t k = 0; k <= s.n; ++k) stay += level[k] * std::pow(rho, static_cast<double>(k));
    return 0.5 - 0.5 * stay;
}

double ns_exact(const Ptf& f, double delta, int threads) {
    require_delta(delta);
    const TruthTable t = truth_table(f, threads);
    if (static_cast<int>(t.n) <= brute_limit()) return ns_exact_direct(t, delta, threads);
    return ns_exact_spectrum(fourier_transform(t, threads), delta);
}

Estimate ns_mc(const Ptf& f, double delta, uint64_t samples, double confidence, uint64_t seed,
               int threads) {
    require_delta(delta);
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(confidence > 0.0) || confidence >= 1.0) throw std::invalid_argument("confidence must lie in (0, 1)");
    const CubeEvaluator eval(f.poly);
    const uint32_t n = f.var_count();
    const uint32_t words = n == 0 ? 1 : (n + 63) / 64;
    const double theta = f.theta;
    const uint64_t hits = par::count_indexed(samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<uint64_t> x(words, 0);
        random_point(rs, n, x.data(), words);
        const int s0 = eval.sign(x.data(), theta);
        apply_flips(rs, n, x.data(), delta);
        return eval.sign(x.data(), theta) != s0;
    });
    Estimate e;
    e.value = static_cast<double>(hits) / static_cast<double>(samples);
    e.half_width = hoeffding_half_width(samples, confidence);
    e.confidence = confidence;
    e.samples = samples;
    e.seed = seed;
    return e;
}

Estimate as_mc(const Ptf& f, uint64_t samples, double confidence, uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(confidence > 0.0) || confidence >= 1.0) throw std::invalid_argument("confidence must lie in (0, 1)");
    const CubeEvaluator eval(f.poly);
    const uint32_t n = f.var_count();
    const uint32_t words = n == 0 ? 1 : (n + 63) / 64;
    const double theta = f.theta;
    const double sum = par::sum_indexed(samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<uint64_t> x(words, 0);
        random_point(rs, n, x.data(), words);
        const int s0 = eval.sign(x.data(), theta);
        uint32_t sensitive = 0;
        for (uint32_t b = 0; b < n; ++b) {
            x[b / 64] ^= uint64_t{1} << (b % 64);
            if (eval.sign(x.data(), theta) != s0) ++sensitive;
            x[b / 64] ^= uint64_t{1} << (b % 64);
        }
        return static_cast<double>(sensitive);
    });
    Estimate e;
    e.value = sum / static_cast<double>(samples);
    e.half_width = static_cast<double>(n) * hoeffding_half_width(samples, confidence);
    e.confidence = confidence;
    e.samples = samples;
    e.seed = seed;
    return e;
}

Estimate influence_mc(const Ptf& f, uint32_t i, uint64_t samples, double confidence, uint64_t seed,
                      int threads) {
    require_var(f.var_count(), i);
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(confidence > 0.0) || confidence >= 1.0) throw std::invalid_argument("confidence must lie in (0, 1)");
    const CubeEvaluator eval(f.poly);
    const uint32_t n = f.var_count();
    const uint32_t words = (n + 63) / 64;
    const double theta = f.theta;
    const uint64_t hits = par::count_indexed(samples, threads, [&](uint64_t k) {
        RandomStream rs(seed, k);
        std::vector<uint64_t> x(words, 0);
        random_point(rs, n, x.data(), words);
        const int s0 = eval.sign(x.data(), theta);
        x[i / 64] ^= uint64_t{1} << (i % 64);
        return eval.sign(x.data(), theta) != s0;
    });
    Estimate e;
    e.value = static_cast<double>(hits) / static_cast<double>(samples);
    e.half_width = hoeffding_half_width(samples, confidence);
    e.confidence = confidence;
    e.samples = samples;
    e.seed = seed;
    return e;
}

}  // namespace ptf::hypercube
