#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "ptf/polynomial.hpp"

namespace ptf::gaussian {

// Orthonormal (probabilists') Hermite value H_k(x), computed with the
// stable three-term recurrence sqrt(k+1) H_{k+1} = x H_k - sqrt(k) H_{k-1}.
double hermite_univariate(uint32_t k, double x);

// H_0(x) .. H_kmax(x) in one sweep.
std::vector<double> hermite_univariate_row(uint32_t kmax, double x);

// Multivariate H_S(x) = prod_i H_{s_i}(x_i); the multiset S is carried as a
// Monomial whose multiplicities are the s_i.
double hermite_multivariate(const Monomial& s, std::span<const double> x);

// Hermite coefficients \hat P_S of a polynomial; under the standard Gaussian
// measure ||P||^2 = sum_S \hat P_S^2.
struct HermiteExpansion {
    uint32_t n = 0;
    std::map<Monomial, double> coeffs;

    double norm_sq() const;
    double coefficient(const Monomial& s) const;
};

// Exact change of basis, valid for any polynomial (multiplicities allowed).
HermiteExpansion hermite_expand(const Polynomial& p);

// Inverse change of basis back to monomial coefficients.
Polynomial hermite_to_polynomial(const HermiteExpansion& h);

// E[P(X)^2] under the standard multivariate Gaussian.
double norm_sq_gaussian(const Polynomial& p);

// Value of the Taylor expansion of H_S about x evaluated at z (the exact
// finite expansion through derivatives of every order); equals H_S(z) up to
// rounding and is exposed for verification.
double hermite_taylor_about(const Monomial& s, std::span<const double> x, std::span<const double> z);

}  // namespace ptf::gaussian
