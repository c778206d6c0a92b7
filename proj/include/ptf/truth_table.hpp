#pragma once

#include <cstdint>
#include <vector>

#include "ptf/polynomial.hpp"

namespace ptf::hypercube {

// Sign table over the full cube. Index i encodes the point x(i) with
// x_b = +1 when bit b of i is set, -1 otherwise.
struct TruthTable {
    uint32_t n = 0;
    std::vector<int8_t> signs;  // 2^n entries in {+1, -1}

    size_t size() const { return signs.size(); }
};

// Dense Fourier coefficients; coeffs[S] = \hat f(S) for subset bitmask S.
struct Spectrum {
    uint32_t n = 0;
    std::vector<double> coeffs;

    double parseval_sum() const;
};

// In-place unnormalized Walsh-Hadamard transform in natural order:
// v[i] <- sum_S v[S] * (-1)^{popcount(i & S)}.
void walsh_hadamard(std::vector<double>& v, int threads = 0);

// P(x(i)) for every cube point; multilinear P with n <= exact_limit().
std::vector<double> value_table(const Polynomial& p, int threads = 0);

TruthTable truth_table(const Ptf& f, int threads = 0);

Spectrum fourier_transform(const TruthTable& t, int threads = 0);
TruthTable inverse_transform(const Spectrum& s, int threads = 0);

// Evaluates a multilinear polynomial on +-1 points given as bit words
// (bit set = +1). Works for any n; terms are stored as sparse word masks.
class CubeEvaluator {
public:
    explicit CubeEvaluator(const Polynomial& p);

    uint32_t var_count() const { return n_; }
    uint32_t words() const { return words_; }

    double value(const uint64_t* x) const;
    int sign(const uint64_t* x, double theta) const;

private:
    struct Term {
        double coeff;
        uint32_t degree;
        std::vector<std::pair<uint32_t, uint64_t>> masks;  // (word, bits)
    };
    uint32_t n_ = 0;
    uint32_t words_ = 0;
    std::vector<Term> terms_;
};

}  // namespace ptf::hypercube
