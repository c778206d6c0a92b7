#pragma once

#include <cstdint>
#include <span>

#include "ptf/estimate.hpp"
#include "ptf/polynomial.hpp"
#include "ptf/rng.hpp"

namespace ptf::gaussian {

// Correlated Gaussian input pair: X standard normal and
// Z = (1 - delta) X + sqrt(2 delta - delta^2) Y with Y independent standard
// normal, so both marginals are standard and corr(X_i, Z_i) = 1 - delta.
struct GaussianPair {
    double delta;

    explicit GaussianPair(double d);
    void sample(RandomStream& rs, std::span<double> x, std::span<double> z) const;
};

// Pr[f(X) != f(Z)] by Monte Carlo.
Estimate gns_mc(const Ptf& f, double delta, uint64_t samples, double confidence, uint64_t seed,
                int threads = 0);

// ||P(Z) - P(X)||^2. The closed form sums 2 (1 - (1-delta)^{|S|}) \hat P_S^2
// over the Hermite expansion; the Monte Carlo mode estimates the defining
// expectation and carries a 3-standard-error interval.
double perturbation_norm_sq(const Polynomial& p, double delta);
Estimate perturbation_norm_sq_mc(const Polynomial& p, double delta, uint64_t samples, uint64_t seed,
                                 int threads = 0);

// Pr[P(X)/||P|| in [a, b]]; the polynomial is normalized by the operation.
Estimate anticoncentration_gaussian_mc(const Polynomial& p, double a, double b, uint64_t samples,
                                       double confidence, uint64_t seed, int threads = 0);
double anticoncentration_hypercube_exact(const Polynomial& p, double a, double b, int threads = 0);

// max_t |Pr_cube[P < t] - Pr_gauss[P < t]| over the grid, for a normalized
// eps-regular multilinear polynomial (the regularity hypothesis is checked).
double invariance_gap(const Polynomial& p, double eps, std::span<const double> t_grid,
                      uint64_t gaussian_samples, uint64_t seed, int threads = 0);

}  // namespace ptf::gaussian
