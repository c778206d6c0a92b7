#pragma once

#include <cstdint>
#include <vector>

#include "ptf/polynomial.hpp"

namespace ptf::structure {

// Per-variable weights w_i^2 = sum of squared coefficients of monomials
// containing i, the sorting permutation (decreasing weight, ties by
// ascending index), suffix sums of the sorted weights, and the regularity
// statistic sum_i w_i^4 / sigma_1^4.
struct WeightProfile {
    std::vector<double> w_sq;         // by original variable index
    std::vector<uint32_t> perm;       // sorted order: perm[0] is the heaviest variable
    std::vector<double> sorted_w_sq;  // w_sq[perm[k]]
    std::vector<double> tail_sq;      // tail_sq[k] = sum_{j >= k} sorted_w_sq[j]; size n+1
    double regular_stat = 0.0;

    double sigma1_sq() const { return tail_sq.empty() ? 0.0 : tail_sq[0]; }
};

// Requires a multilinear polynomial with at least one variable-dependent
// term (constants and the zero polynomial carry no weight).
WeightProfile weight_profile(const Polynomial& p);

// sum_i w_i^4 <= eps^2 sigma_1^4
bool is_regular(const Polynomial& p, double eps);
bool is_regular(const WeightProfile& wp, double eps);

// Least i in [0, n] such that every sorted weight after position i is at
// most eps^2 times the tail variance from position i on; n when no index
// qualifies earlier.
uint32_t critical_index(const Polynomial& p, double eps);
uint32_t critical_index(const WeightProfile& wp, double eps);

// sigma_j^2 <= (1 - eps^2)^{j-i} sigma_i^2 for all 1 <= i < j < K(P, eps);
// unconditionally true, exposed as a self-check.
bool sigma_decay_check(const Polynomial& p, double eps);

}  // namespace ptf::structure
