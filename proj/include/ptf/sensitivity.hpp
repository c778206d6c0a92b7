#pragma once

#include <vector>

#include "ptf/estimate.hpp"
#include "ptf/truth_table.hpp"

namespace ptf::hypercube {

// Pr[f(X) != f(X^(i))] by full enumeration.
double influence_exact(const TruthTable& t, uint32_t i, int threads = 0);
std::vector<double> influences_exact(const TruthTable& t, int threads = 0);
double average_sensitivity_exact(const TruthTable& t, int threads = 0);

double influence_exact(const Ptf& f, uint32_t i, int threads = 0);
double average_sensitivity_exact(const Ptf& f, int threads = 0);

struct SensitivitySummary {
    double average_sensitivity = 0.0;
    std::vector<double> influences;
};

// AS = sum_S |S| \hat f(S)^2 and I_i = sum_{S ∋ i} \hat f(S)^2; valid for
// spectra of +-1-valued functions, checked through Parseval within 1e-6.
SensitivitySummary sensitivity_fourier(const Spectrum& s, int threads = 0);

// Exact noise sensitivity. The direct path sums over all (point, flip
// pattern) pairs at 4^n cost and is capped at brute_limit(); the spectrum
// path uses NS_delta = 1/2 - 1/2 sum_S \hat f(S)^2 (1-2 delta)^{|S|}.
// delta in (0, 1]; delta = 1 means every bit flips.
double ns_exact_direct(const TruthTable& t, double delta, int threads = 0);
double ns_exact_spectrum(const Spectrum& s, double delta);
double ns_exact(const Ptf& f, double delta, int threads = 0);

// Monte Carlo estimators; deterministic in (seed, samples) for any thread
// count. as_mc counts sensitive coordinates per sample, so its half-width is
// the Hoeffding width scaled by the range n.
Estimate ns_mc(const Ptf& f, double delta, uint64_t samples, double confidence, uint64_t seed,
               int threads = 0);
Estimate as_mc(const Ptf& f, uint64_t samples, double confidence, uint64_t seed, int threads = 0);
Estimate influence_mc(const Ptf& f, uint32_t i, uint64_t samples, double confidence, uint64_t seed,
                      int threads = 0);

}  // namespace ptf::hypercube
