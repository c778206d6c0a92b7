#include "ptf/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ptf/rng.hpp"

namespace ptf {

Monomial::Monomial(std::vector<Entry> entries) : entries_(std::move(entries)) {
    uint32_t deg = 0;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].second == 0) throw std::invalid_argument("monomial multiplicity must be >= 1");
        if (i > 0 && entries_[i].first <= entries_[i - 1].first)
            throw std::invalid_argument("monomial indices must be strictly increasing");
        deg += entries_[i].second;
    }
    degree_ = deg;
}

Monomial Monomial::from_indices(const std::vector<uint32_t>& indices) {
    std::vector<Entry> entries;
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i > 0 && indices[i] < indices[i - 1])
            throw std::invalid_argument("monomial indices must be sorted ascending");
        if (!entries.empty() && entries.back().first == indices[i])
            ++entries.back().second;
        else
            entries.emplace_back(indices[i], 1);
    }
    return Monomial(std::move(entries));
}

Monomial Monomial::from_indices(std::initializer_list<uint32_t> indices) {
    return from_indices(std::vector<uint32_t>(indices));
}

Monomial Monomial::from_mask(uint64_t mask) {
    std::vector<Entry> entries;
    while (mask != 0) {
        const uint32_t b = static_cast<uint32_t>(__builtin_ctzll(mask));
        entries.emplace_back(b, 1);
        mask &= mask - 1;
    }
    return Monomial(std::move(entries));
}

bool Monomial::multilinear() const {
    for (const auto& [idx, mult] : entries_)
        if (mult != 1) return false;
    return true;
}

uint64_t Monomial::mask() const {
    uint64_t m = 0;
    for (const auto& [idx, mult] : entries_) {
        if (mult != 1 || idx >= 64) throw std::invalid_argument("mask requires a multilinear monomial on indices < 64");
        m |= uint64_t{1} << idx;
    }
    return m;
}

void Restriction::assign(uint32_t var, int value) {
    if (value != 1 && value != -1) throw std::invalid_argument("restriction values must be +1 or -1");
    values_[var] = value;
}

Polynomial::Polynomial(uint32_t n, std::map<Monomial, double> terms) : n_(n) {
    for (auto& [mono, coeff] : terms) {
        if (mono.min_vars() > n_) throw std::invalid_argument("monomial index out of range");
        if (coeff != 0.0) terms_.emplace(mono, coeff);
    }
    recompute_degree();
}

double Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double coeff) {
    if (m.min_vars() > n_) throw std::invalid_argument("monomial index out of range");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (coeff != 0.0) {
            terms_.emplace(m, coeff);
            if (m.degree() > degree_) degree_ = m.degree();
        }
        return;
    }
    it->second += coeff;
    if (it->second == 0.0) {
        const bool was_top = it->first.degree() == degree_;
        terms_.erase(it);
        if (was_top) recompute_degree();
    }
}

void Polynomial::recompute_degree() {
    degree_ = 0;
    for (const auto& [mono, coeff] : terms_) degree_ = std::max(degree_, mono.degree());
}

bool Polynomial::multilinear() const {
    for (const auto& [mono, coeff] : terms_)
        if (!mono.multilinear()) return false;
    return true;
}

double Polynomial::evaluate(std::span<const double> x) const {
    if (x.size() != n_) throw std::invalid_argument("evaluate: point dimension does not match variable count");
    double total = 0.0;
    for (const auto& [mono, coeff] : terms_) {
        double prod = coeff;
        for (const auto& [idx, mult] : mono.entries()) {
            const double v = x[idx];
            for (uint32_t k = 0; k < mult; ++k) prod *= v;
        }
        total += prod;
    }
    return total;
}

double Polynomial::norm_sq() const {
    double total = 0.0;
    for (const auto& [mono, coeff] : terms_) {
        if (!mono.multilinear())
            throw std::invalid_argument("norm_sq requires a multilinear polynomial; expand in the Hermite basis instead");
        total += coeff * coeff;
    }
    return total;
}

double Polynomial::mean() const {
    if (!multilinear()) throw std::invalid_argument("mean requires a multilinear polynomial");
    return constant_term();
}

double Polynomial::variance() const {
    double total = 0.0;
    for (const auto& [mono, coeff] : terms_) {
        if (!mono.multilinear()) throw std::invalid_argument("variance requires a multilinear polynomial");
        if (!mono.constant()) total += coeff * coeff;
    }
    return total;
}

Polynomial Polynomial::restricted(const Restriction& r) const {
    for (const auto& [var, value] : r.values())
        if (var >= n_) throw std::invalid_argument("restriction index out of range");
    Polynomial out(n_);
    for (const auto& [mono, coeff] : terms_) {
        double c = coeff;
        std::vector<Monomial::Entry> kept;
        for (const auto& [idx, mult] : mono.entries()) {
            auto it = r.values().find(idx);
            if (it == r.values().end()) {
                kept.emplace_back(idx, mult);
            } else if (it->second == -1 && (mult & 1u)) {
                c = -c;
            }
        }
        out.add_term(Monomial(std::move(kept)), c);
    }
    return out;
}

Polynomial Polynomial::scaled(double factor) const {
    Polynomial out(n_);
    if (factor == 0.0) return out;
    for (const auto& [mono, coeff] : terms_) out.add_term(mono, coeff * factor);
    return out;
}

CoefficientModel coefficient_model_from_string(const std::string& name) {
    if (name == "unit-gaussian") return CoefficientModel::UnitGaussian;
    if (name == "signed-unit") return CoefficientModel::SignedUnit;
    if (name == "majority-like") return CoefficientModel::MajorityLike;
    if (name == "block-structured") return CoefficientModel::BlockStructured;
    throw std::invalid_argument("unknown coefficient model: " + name);
}

std::string to_string(CoefficientModel model) {
    switch (model) {
        case CoefficientModel::UnitGaussian: return "unit-gaussian";
        case CoefficientModel::SignedUnit: return "signed-unit";
        case CoefficientModel::MajorityLike: return "majority-like";
        case CoefficientModel::BlockStructured: return "block-structured";
    }
    return "?";
}

namespace {

// Enumerates all k-subsets of [n] in lexicographic order.
template <class Fn>
void each_subset(uint32_t n, uint32_t k, Fn&& fn) {
    if (k == 0 || k > n) return;
    std::vector<uint32_t> idx(k);
    for (uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + static_cast<uint32_t>(i)) --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (uint32_t j = static_cast<uint32_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Polynomial random_polynomial(uint32_t n, uint32_t d, CoefficientModel model, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_polynomial: n must be >= 1");
    if (d > n) throw std::invalid_argument("random_polynomial: multilinear degree cannot exceed n");
    Polynomial out(n);
    switch (model) {
        case CoefficientModel::UnitGaussian:
        case CoefficientModel::SignedUnit: {
            RandomStream rs(seed, 0);
            for (uint32_t k = 1; k <= d; ++k) {
                each_subset(n, k, [&](const std::vector<uint32_t>& idx) {
                    const double c = model == CoefficientModel::UnitGaussian
                                         ? rs.next_gaussian()
                                         : static_cast<double>(rs.next_sign());
                    out.add_term(Monomial::from_indices(idx), c);
                });
            }
            break;
        }
        case CoefficientModel::MajorityLike: {
            for (uint32_t i = 0; i < n; ++i) out.add_term(Monomial::from_indices({i}), 1.0);
            break;
        }
        case CoefficientModel::BlockStructured: {
            const uint32_t block = d == 0 ? 1 : d;
            uint32_t j = 0;
            for (uint32_t lo = 0; lo < n; lo += block, ++j) {
                std::vector<uint32_t> idx;
                for (uint32_t i = lo; i < std::min(n, lo + block); ++i) idx.push_back(i);
                out.add_term(Monomial::from_indices(idx), std::ldexp(1.0, -static_cast<int>(j)));
            }
            break;
        }
    }
    return out;
}

Polynomial majority_polynomial(uint32_t n) {
    Polynomial out(n);
    for (uint32_t i = 0; i < n; ++i) out.add_term(Monomial::from_indices({i}), 1.0);
    return out;
}

}  // namespace ptf
