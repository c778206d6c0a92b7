#include "ptf/gaussian_noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ptf/hermite.hpp"
#include "ptf/parallel.hpp"
#include "ptf/truth_table.hpp"
#include "ptf/weights.hpp"

namespace ptf::gaussian {

GaussianPair::GaussianPair(double d) : delta(d) {
    if (!(delta > 0.0) || delta >= 1.0) throw std::invalid_argument("delta must lie in (0, 1)");
}

void GaussianPair::sample(RandomStream& rs, std::span<double> x, std::span<double> z) const {
    const double keep = 1.0 - delta;
    const double fresh = std::sqrt(2.0 * delta - delta * delta);
    for (size_t i = 0; i < x.size(); ++i) {
        x[i] = rs.next_gaussian();
        z[i] = keep * x[i] + fresh * rs.next_gaussian();
    }
}

Estimate gns_mc(const Ptf& f, double delta, uint64_t samples, double confidence, uint64_t seed,
                int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (!(confidence > 0.0) || confidence >= 1.0) throw std::invalid_argument("confidence must lie in (0, 1)");
    const GaussianPair pair(delta);
    const uint32_t n = f.var_count();
    const uint64_t hits = par::count_indexed(samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<double> x(n), z(n);
        pair.sample(rs, x, z);
        return f.sign_at(x) != f.sign_at(z);
    });
    Estimate e;
    e.value = static_cast<double>(hits) / static_cast<double>(samples);
    e.half_width = hoeffding_half_width(samples, confidence);
    e.confidence = confidence;
    e.samples = samples;
    e.seed = seed;
    return e;
}

double perturbation_norm_sq(const Polynomial& p, double delta) {
    if (!(delta > 0.0) || delta >= 1.0) throw std::invalid_argument("delta must lie in (0, 1)");
    const HermiteExpansion h = hermite_expand(p);
    const double keep = 1.0 - delta;
    double total = 0.0;
    for (const auto& [s, c] : h.coeffs) {
        const double corr = std::pow(keep, static_cast<double>(s.degree()));
        total += 2.0 * (1.0 - corr) * c * c;
    }
    return total;
}

Estimate perturbation_norm_sq_mc(const Polynomial& p, double delta, uint64_t samples, uint64_t seed,
                                 int threads) {
    if (samples < 2) throw std::invalid_argument("samples must be >= 2");
    const GaussianPair pair(delta);
    const uint32_t n = p.var_count();
    const par::Moments m = par::moments_indexed(samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<double> x(n), z(n);
        pair.sample(rs, x, z);
        const double q = p.evaluate(z) - p.evaluate(x);
        return q * q;
    });
    Estimate e;
    e.value = m.mean();
    e.half_width = 3.0 * std::sqrt(m.sample_variance() / static_cast<double>(samples));
    e.confidence = 0.9973;
    e.samples = samples;
    e.seed = seed;
    return e;
}

Estimate anticoncentration_gaussian_mc(const Polynomial& p, double a, double b, uint64_t samples,
                                       double confidence, uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (b < a) throw std::invalid_argument("empty interval: b < a");
    const double norm = std::sqrt(norm_sq_gaussian(p));
    if (norm == 0.0) throw std::invalid_argument("cannot normalize the zero polynomial");
    const Polynomial q = p.scaled(1.0 / norm);
    const uint32_t n = q.var_count();
    const uint64_t hits = par::count_indexed(samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<double> x(n);
        for (double& v : x) v = rs.next_gaussian();
        const double value = q.evaluate(x);
        return a <= value && value <= b;
    });
    Estimate e;
    e.value = static_cast<double>(hits) / static_cast<double>(samples);
    e.half_width = hoeffding_half_width(samples, confidence);
    e.confidence = confidence;
    e.samples = samples;
    e.seed = seed;
    return e;
}

double anticoncentration_hypercube_exact(const Polynomial& p, double a, double b, int threads) {
    if (b < a) throw std::invalid_argument("empty interval: b < a");
    const double norm_sq = p.norm_sq();
    if (norm_sq == 0.0) throw std::invalid_argument("cannot normalize the zero polynomial");
    const Polynomial q = p.scaled(1.0 / std::sqrt(norm_sq));
    const std::vector<double> values = hypercube::value_table(q, threads);
    const uint64_t hits = par::count_indexed(values.size(), threads,
                                             [&](uint64_t i) { return a <= values[i] && values[i] <= b; });
    return std::ldexp(static_cast<double>(hits), -static_cast<int>(q.var_count()));
}

double invariance_gap(const Polynomial& p, double eps, std::span<const double> t_grid,
                      uint64_t gaussian_samples, uint64_t seed, int threads) {
    if (t_grid.empty()) throw std::invalid_argument("empty t grid");
    if (gaussian_samples < 1) throw std::invalid_argument("gaussian_samples must be >= 1");
    if (!structure::is_regular(p, eps))
        throw std::invalid_argument("invariance_gap requires an eps-regular polynomial");
    const double norm_sq = p.norm_sq();
    const Polynomial q = p.scaled(1.0 / std::sqrt(norm_sq));

    std::vector<double> cube_values = hypercube::value_table(q, threads);
    std::sort(cube_values.begin(), cube_values.end());

    const uint32_t n = q.var_count();
    std::vector<double> gauss_values(gaussian_samples);
    par::for_indexed(gaussian_samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<double> x(n);
        for (double& v : x) v = rs.next_gaussian();
        gauss_values[i] = q.evaluate(x);
    });
    std::sort(gauss_values.begin(), gauss_values.end());

    double gap = 0.0;
    for (double t : t_grid) {
        const double cube_cdf =
            static_cast<double>(std::lower_bound(cube_values.begin(), cube_values.end(), t) -
                                cube_values.begin()) /
            static_cast<double>(cube_values.size());
        const double gauss_cdf =
            static_cast<double>(std::lower_bound(gauss_values.begin(), gauss_values.end(), t) -
                                gauss_values.begin()) /
            static_cast<double>(gauss_values.size());
        gap = std::max(gap, std::fabs(cube_cdf - gauss_cdf));
    }
    return gap;
}

}  // namespace ptf::gaussian
