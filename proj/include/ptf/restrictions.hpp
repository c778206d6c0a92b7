#pragma once

#include <cstdint>

#include "ptf/estimate.hpp"
#include "ptf/polynomial.hpp"

namespace ptf::structure {

enum class Determinacy { Determining, NotDetermining, Inconclusive };

const char* to_string(Determinacy d);

// Outcome of testing whether a partial assignment pins f to a fixed sign
// except with probability <= eps. Exact when the restricted support is
// small; in Monte Carlo mode the verdict is three-valued and Inconclusive
// marks a bias interval straddling eps.
struct DeterminingResult {
    Determinacy outcome = Determinacy::Inconclusive;
    int majority_sign = 1;
    Estimate bias;
    bool exact = false;
};

DeterminingResult determining_test(const Ptf& f, const Restriction& r, double eps,
                                   uint64_t samples, uint64_t seed, int threads = 0);

enum class RestrictionMode { Regularity, Determining };

struct ExperimentConfig {
    double a_d = 1.0;  // regularity multiplier from the restriction lemma
    double b_d = 1.0;  // determinacy multiplier
    double c_d = 1.0;  // block-length constant: L = ceil(c_d ln(1/eps)/eps^2)
    uint64_t inner_samples = 20000;
    double confidence = 0.99;
};

uint32_t determining_block_length(double eps, double c_d);

// Empirical probability that a uniformly random restriction of the top
// critical-index variables (regularity mode) or top-L variables
// (determining mode) satisfies the mode's predicate.
Estimate restriction_experiment(const Ptf& f, double eps, RestrictionMode mode, uint64_t trials,
                                uint64_t seed, const ExperimentConfig& cfg = {}, int threads = 0);

}  // namespace ptf::structure
