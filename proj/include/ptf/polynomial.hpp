#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptf/common.hpp"

namespace ptf {

// Product of variables with multiplicities. Entries are (variable index,
// multiplicity) pairs with strictly increasing indices and multiplicities
// >= 1; the empty entry list is the constant monomial.
class Monomial {
public:
    using Entry = std::pair<uint32_t, uint32_t>;

    Monomial() = default;
    explicit Monomial(std::vector<Entry> entries);

    // Convenience builder from a sorted index list where repeats encode
    // multiplicity, e.g. {2, 2, 3} -> x2^2 x3.
    static Monomial from_indices(const std::vector<uint32_t>& indices);
    static Monomial from_indices(std::initializer_list<uint32_t> indices);

    // Multilinear monomial from a subset bitmask (indices < 64).
    static Monomial from_mask(uint64_t mask);

    const std::vector<Entry>& entries() const { return entries_; }
    uint32_t degree() const { return degree_; }
    bool constant() const { return entries_.empty(); }
    bool multilinear() const;

    // Smallest variable count that can host this monomial.
    uint32_t min_vars() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

    // Subset bitmask; requires multilinear with indices < 64.
    uint64_t mask() const;

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<Entry> entries_;
    uint32_t degree_ = 0;
};

// Partial assignment of variables to +1 or -1.
class Restriction {
public:
    Restriction() = default;
    void assign(uint32_t var, int value);
    bool assigns(uint32_t var) const { return values_.count(var) != 0; }
    int value(uint32_t var) const { return values_.at(var); }
    size_t size() const { return values_.size(); }
    const std::map<uint32_t, int>& values() const { return values_; }

private:
    std::map<uint32_t, int> values_;
};

// Sparse real multivariate polynomial over variables x0..x(n-1). Stored
// coefficients are never zero; the zero polynomial has degree 0.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(uint32_t n) : n_(n) {}
    Polynomial(uint32_t n, std::map<Monomial, double> terms);

    uint32_t var_count() const { return n_; }
    uint32_t degree() const { return degree_; }
    bool zero() const { return terms_.empty(); }
    bool multilinear() const;
    const std::map<Monomial, double>& terms() const { return terms_; }

    double coefficient(const Monomial& m) const;
    double constant_term() const { return coefficient(Monomial{}); }

    // Adds into the coefficient; a result of exactly zero removes the term.
    void add_term(const Monomial& m, double coeff);

    double evaluate(std::span<const double> x) const;

    // l2 norm squared under the uniform hypercube or standard Gaussian
    // measure; valid for multilinear polynomials only (constant included).
    double norm_sq() const;

    // E[P] under either product measure (multilinear only): the constant term.
    double mean() const;

    // Variance = norm_sq - mean^2 (multilinear only).
    double variance() const;

    Polynomial restricted(const Restriction& r) const;

    Polynomial scaled(double factor) const;

    bool operator==(const Polynomial& other) const {
        return n_ == other.n_ && terms_ == other.terms_;
    }

private:
    void recompute_degree();

    uint32_t n_ = 0;
    uint32_t degree_ = 0;
    std::map<Monomial, double> terms_;
};

// Polynomial threshold function f(x) = sign(P(x) - theta), sign(0) = +1.
struct Ptf {
    Polynomial poly;
    double theta = 0.0;

    uint32_t var_count() const { return poly.var_count(); }
    int sign_at(std::span<const double> x) const { return sign_pm(poly.evaluate(x) - theta); }
};

enum class CoefficientModel { UnitGaussian, SignedUnit, MajorityLike, BlockStructured };

CoefficientModel coefficient_model_from_string(const std::string& name);
std::string to_string(CoefficientModel model);

// Multilinear polynomial over n variables, deterministic in (model, n, d,
// seed). Gaussian and signed models draw one coefficient per monomial of
// degree 1..d in (degree, lexicographic) order; majority-like puts weight 1
// on every singleton; block-structured gives consecutive size-d blocks their
// full product monomial with geometrically decaying coefficients 2^-j.
Polynomial random_polynomial(uint32_t n, uint32_t d, CoefficientModel model, uint64_t seed);

// All-equal-weight majority polynomial x0 + ... + x(n-1).
Polynomial majority_polynomial(uint32_t n);

}  // namespace ptf
