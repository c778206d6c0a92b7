#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptf/polynomial.hpp"

namespace ptf::learn {

// Labeled sample over the cube; points are stored as table indices (bit b of
// the index is the sign of variable b), which caps n at the exact limit.
struct LabeledSample {
    uint32_t n = 0;
    std::vector<uint64_t> points;
    std::vector<int8_t> labels;  // +1 / -1
    std::string source;
    uint64_t seed = 0;
    double noise_rate = 0.0;

    size_t size() const { return points.size(); }
};

// m i.i.d. uniform points labeled by the target, each label flipped with
// probability noise_rate.
LabeledSample sample_from_ptf(const Ptf& target, double noise_rate, uint64_t m, uint64_t seed);

// Every cube point once with its noiseless label.
LabeledSample full_cube_sample(const Ptf& target);

struct Hypothesis {
    Polynomial p;
    double threshold = 0.0;

    int sign_at(std::span<const double> x) const { return sign_pm(p.evaluate(x) - threshold); }
};

// Regression degree from the accuracy target: D = max(1, ceil(1/delta*))
// with delta* = (eps^2 / (4 A))^{4d+6}; clamped to 2^62 on overflow.
uint64_t degree_for_accuracy(uint32_t d, double eps, double A = 1.0);

uint64_t regression_column_count(uint32_t n, uint64_t D);

// Least-squares fit of the labels against all multilinear monomials of
// degree <= D, followed by a threshold search over midpoints of the sorted
// predictions (plus the two infinite ends). Normal equations are solved by
// Cholesky with a pivot tolerance of 1e-10; rank-deficient systems fall back
// to a minimum-norm eigendecomposition solve.
Hypothesis fit(const LabeledSample& sample, uint64_t D, uint64_t column_budget = 100000,
               int threads = 0);

// Misclassification frequency on a test sample.
double evaluate_error(const Hypothesis& h, const LabeledSample& test);

struct EvalResult {
    double error = 0.0;
    double opt = 0.0;
    double excess = 0.0;
};

// Exact error against the known generator-plus-noise distribution:
// error = eta + (1 - 2 eta) Pr_x[h != g], opt = eta.
EvalResult evaluate_exact(const Hypothesis& h, const Ptf& target, double noise_rate,
                          int threads = 0);

// Training squared loss (mean over the sample) of an arbitrary polynomial.
double training_squared_loss(const Polynomial& p, const LabeledSample& sample);

}  // namespace ptf::learn
