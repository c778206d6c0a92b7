#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptf/polynomial.hpp"

namespace ptf::verify {

// One checked inequality instance. Exact suites compare lhs <= rhs with no
// tolerance beyond accumulation slack; Monte Carlo suites use interval
// logic, and a straddling interval marks the report inconclusive instead of
// failed.
struct CheckReport {
    std::string suite;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    bool passed = false;
    bool inconclusive = false;
    double achieved_constant = 0.0;
    uint64_t seed = 0;
};

// CSV with header suite,instance,lhs,rhs,achieved_constant,passed,seed;
// the passed column carries 1, 0, or inc.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

// 0 all passed, 2 any failed, 3 no failures but at least one inconclusive.
int exit_code_for(const std::vector<CheckReport>& reports);

// ---- exact inequality checkers ----

// E[Q^2 R^2] <= 9^d E[Q^2] E[R^2] over the cube, d = max degree.
CheckReport check_hypercontractivity(const Polynomial& q, const Polynomial& r, int threads = 0);

// Tail floors with b = 9^d: Pr[A >= sigma/(4 sqrt(b))] >= 1/(4^{4/3} b) for
// A = Q - E[Q], and Pr[Q >= E[Q]] >= 1/(4^{4/3} 9^d).
std::pair<CheckReport, CheckReport> check_poly_lower_bounds(const Polynomial& q, int threads = 0);

// (E|sum_i X_i f_i(X_{-i})|)^2 <= 2 sum_i AS(f_i) + n for functions f_i that
// ignore their own coordinate (verified by truth table).
CheckReport check_mainlmc(const std::vector<Ptf>& fs, int threads = 0);

// Block construction showing the bound tight up to constants; n must be a
// perfect square.
std::vector<Ptf> mainlmc_tightness_instance(uint32_t n);

// AS(f) <= 3 n^{1 - 2^-d}
CheckReport check_combas(const Ptf& f, int threads = 0);

// AS(f) <= 2 n e NS_{1/n}(f)
CheckReport check_nstoas(const Ptf& f, int threads = 0);

// NS_rho(f) <= (d+1) delta + Pr[|P - theta| <= 2 sqrt(rho)/delta] for f
// normalized so the variable part of P has unit norm.
CheckReport check_actons(const Ptf& f, double rho, double delta, int threads = 0);

// Critical index satisfies its defining predicate and is minimal.
CheckReport check_critical_index_minimal(const Polynomial& p, double eps);

// ---- bound-shape machinery ----

double median(std::vector<double> values);

// Least-squares slope of log y against log x; pairs with y <= 0 are skipped.
double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

// Achieved-constant stability: on the asymptotic side of the grid (small
// values when asymptotic_at_small, large otherwise) no achieved constant may
// exceed factor times the median. One report per grid point.
std::vector<CheckReport> bound_shape_reports(const std::string& suite, const std::string& instance,
                                             std::span<const double> grid,
                                             std::span<const double> values,
                                             std::span<const double> shape, double factor,
                                             bool asymptotic_at_small, uint64_t seed);

// ---- Hermite / Gaussian appendix helpers ----

// E_MC[H_S H_T] vs the identity for all multiset pairs of total degree <=
// smax over n variables, with interval logic against the tolerance band.
std::vector<CheckReport> hermite_orthonormality_reports(uint32_t n, uint32_t smax, double tol,
                                                        uint64_t samples, uint64_t seed,
                                                        int threads = 0);

// Max |H_S(z) - taylor expansion about x| over random multisets and points.
double hermite_taylor_max_error(uint32_t smax, uint32_t trials, uint64_t seed);

// Max |H'_k(x) - sqrt(k) H_{k-1}(x)| via central differences on a grid.
double hermite_derivative_max_error(uint32_t kmax, double x_limit, uint32_t grid_points);

// Closed-form perturbation norm vs its Monte Carlo oracle (3 standard
// errors).
CheckReport perturbation_match_report(const Polynomial& p, double delta, uint64_t samples,
                                      uint64_t seed, int threads = 0);

// Fitted log-log slope of ||Q|| against delta, expected 1/2 +- tol.
CheckReport perturbation_slope_report(const Polynomial& p, std::span<const double> deltas,
                                      double tol);

// ---- suite registry ----

struct SuiteConfig {
    uint64_t seed = 1;
    uint64_t trials = 0;  // 0 = per-suite default ensemble size
    int threads = 0;
    double drift_factor = 1.5;
    double a_d = 1.0, b_d = 1.0, c_d = 1.0;
    double alpha_d = 0.05, beta_d = 0.05, gamma_d = 0.05, delta_d = 0.05;
    double big_delta_d = 1.0;
};

std::vector<std::string> suite_names();
std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace ptf::verify
