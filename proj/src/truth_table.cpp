#include "ptf/truth_table.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "ptf/parallel.hpp"

namespace ptf::hypercube {

namespace {

void require_exact_size(uint32_t n) {
    if (static_cast<int>(n) > exact_limit())
        throw std::invalid_argument("variable count " + std::to_string(n) +
                                    " exceeds the exact-computation limit " + std::to_string(exact_limit()));
}

void require_multilinear(const Polynomial& p) {
    if (!p.multilinear()) throw std::invalid_argument("operation requires a multilinear polynomial");
}

}  // namespace

double Spectrum::parseval_sum() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return s;
}

void walsh_hadamard(std::vector<double>& v, int threads) {
    const size_t size = v.size();
    if (size == 0 || (size & (size - 1)) != 0) throw std::invalid_argument("WHT input length must be a power of two");
    const int nt = par::resolve_threads(threads);
    for (size_t h = 1; h < size; h <<= 1) {
        const size_t nblocks = size / (2 * h);
#pragma omp parallel for schedule(static) num_threads(nt)
        for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
            const size_t base = static_cast<size_t>(b) * 2 * h;
            for (size_t j = base; j < base + h; ++j) {
                const double x = v[j];
                const double y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

std::vector<double> value_table(const Polynomial& p, int threads) {
    const uint32_t n = p.var_count();
    require_exact_size(n);
    require_multilinear(p);
    std::vector<double> v(size_t{1} << n, 0.0);
    // P(x(i)) = sum_S a_S (-1)^{|S| - popcount(i & S)}; folding (-1)^{|S|}
    // into the coefficients turns the sum into a plain WHT.
    for (const auto& [mono, coeff] : p.terms()) {
        const uint64_t mask = mono.mask();
        v[mask] += (mono.degree() & 1u) ? -coeff : coeff;
    }
    walsh_hadamard(v, threads);
    return v;
}

TruthTable truth_table(const Ptf& f, int threads) {
    const uint32_t n = f.var_count();
    require_exact_size(n);
    require_multilinear(f.poly);
    TruthTable t;
    t.n = n;
    t.signs.resize(size_t{1} << n);
    const std::vector<double> values = value_table(f.poly, threads);
    const double theta = f.theta;
    par::for_indexed(values.size(), threads,
                     [&](uint64_t i) { t.signs[i] = static_cast<int8_t>(sign_pm(values[i] - theta)); });
    return t;
}

Spectrum fourier_transform(const TruthTable& t, int threads) {
    Spectrum s;
    s.n = t.n;
    s.coeffs.assign(t.signs.begin(), t.signs.end());
    walsh_hadamard(s.coeffs, threads);
    // \hat f(S) = 2^{-n} (-1)^{|S|} sum_i f(i) (-1)^{popcount(i & S)}
    const double scale = std::ldexp(1.0, -static_cast<int>(t.n));
    par::for_indexed(s.coeffs.size(), threads, [&](uint64_t mask) {
        const double sgn = (std::popcount(mask) & 1u) ? -scale : scale;
        s.coeffs[mask] *= sgn;
    });
    return s;
}

TruthTable inverse_transform(const Spectrum& s, int threads) {
    std::vector<double> v(s.coeffs.size());
    par::for_indexed(v.size(), threads, [&](uint64_t mask) {
        v[mask] = (std::popcount(mask) & 1u) ? -s.coeffs[mask] : s.coeffs[mask];
    });
    walsh_hadamard(v, threads);
    TruthTable t;
    t.n = s.n;
    t.signs.resize(v.size());
    par::for_indexed(v.size(), threads, [&](uint64_t i) { t.signs[i] = static_cast<int8_t>(sign_pm(v[i])); });
    return t;
}

CubeEvaluator::CubeEvaluator(const Polynomial& p) : n_(p.var_count()) {
    require_multilinear(p);
    words_ = (n_ + 63) / 64;
    terms_.reserve(p.terms().size());
    for (const auto& [mono, coeff] : p.terms()) {
        Term t;
        t.coeff = coeff;
        t.degree = mono.degree();
        uint32_t cur_word = UINT32_MAX;
        for (const auto& [idx, mult] : mono.entries()) {
            const uint32_t w = idx / 64;
            if (w != cur_word) {
                t.masks.emplace_back(w, 0);
                cur_word = w;
            }
            t.masks.back().second |= uint64_t{1} << (idx % 64);
        }
        terms_.push_back(std::move(t));
    }
}

double CubeEvaluator::value(const uint64_t* x) const {
    double total = 0.0;
    for (const Term& t : terms_) {
        uint32_t negatives = 0;
        for (const auto& [w, m] : t.masks) negatives += static_cast<uint32_t>(std::popcount(~x[w] & m));
        total += (negatives & 1u) ? -t.coeff : t.coeff;
    }
    return total;
}

int CubeEvaluator::sign(const uint64_t* x, double theta) const { return sign_pm(value(x) - theta); }

}  // namespace ptf::hypercube
