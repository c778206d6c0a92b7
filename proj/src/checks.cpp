#include "ptf/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ptf/decompose.hpp"
#include "ptf/gaussian_noise.hpp"
#include "ptf/hermite.hpp"
#include "ptf/parallel.hpp"
#include "ptf/restrictions.hpp"
#include "ptf/rng.hpp"
#include "ptf/sensitivity.hpp"
#include "ptf/truth_table.hpp"
#include "ptf/weights.hpp"

namespace ptf::verify {

namespace {

constexpr double kExactSlack = 1e-9;  // accumulation slack for exact suites

bool leq_with_slack(double lhs, double rhs) {
    return lhs <= rhs + kExactSlack * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

double pow_int(double base, uint32_t e) {
    double out = 1.0;
    for (uint32_t i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << "suite,instance,lhs,rhs,achieved_constant,passed,seed\n";
    for (const auto& r : reports) {
        out << r.suite << ',' << r.instance << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << format_double(r.achieved_constant) << ','
            << (r.inconclusive ? "inc" : (r.passed ? "1" : "0")) << ',' << r.seed << '\n';
    }
    return out.str();
}

int exit_code_for(const std::vector<CheckReport>& reports) {
    bool any_fail = false, any_inc = false;
    for (const auto& r : reports) {
        if (r.inconclusive)
            any_inc = true;
        else if (!r.passed)
            any_fail = true;
    }
    if (any_fail) return 2;
    if (any_inc) return 3;
    return 0;
}

CheckReport check_hypercontractivity(const Polynomial& q, const Polynomial& r, int threads) {
    if (q.var_count() != r.var_count())
        throw std::invalid_argument("hypercontractivity check requires matching variable counts");
    const uint32_t d = std::max(q.degree(), r.degree());
    const std::vector<double> qv = hypercube::value_table(q, threads);
    const std::vector<double> rv = hypercube::value_table(r, threads);
    const double inv = std::ldexp(1.0, -static_cast<int>(q.var_count()));
    const double cross = par::sum_indexed(qv.size(), threads, [&](uint64_t i) {
                             const double t = qv[i] * rv[i];
                             return t * t;
                         }) * inv;
    const double qn = q.norm_sq();
    const double rn = r.norm_sq();
    CheckReport rep;
    rep.suite = "hypercon";
    rep.instance = "n=" + std::to_string(q.var_count()) + ",d=" + std::to_string(d);
    rep.lhs = cross;
    rep.rhs = pow_int(9.0, d) * qn * rn;
    rep.achieved_constant = qn * rn > 0.0 ? cross / (qn * rn) : 0.0;
    rep.passed = leq_with_slack(rep.lhs, rep.rhs);
    return rep;
}

std::pair<CheckReport, CheckReport> check_poly_lower_bounds(const Polynomial& q, int threads) {
    const uint32_t d = q.degree();
    const double b = pow_int(9.0, d);
    const double floor_a = 1.0 / (std::pow(4.0, 4.0 / 3.0) * b);
    const double mean = q.mean();
    const double sigma = std::sqrt(q.variance());

    CheckReport tail, median_like;
    tail.suite = "lower-bounds";
    median_like.suite = "lower-bounds";
    const std::string desc = "n=" + std::to_string(q.var_count()) + ",d=" + std::to_string(d);
    tail.instance = desc + ",problm";
    median_like.instance = desc + ",polylb";

    if (sigma == 0.0) {
        // Zero variance: the lemma is vacuous; report a pass.
        tail.lhs = floor_a;
        tail.rhs = 1.0;
        tail.passed = true;
        median_like.lhs = floor_a;
        median_like.rhs = 1.0;
        median_like.passed = true;
        return {tail, median_like};
    }

    const std::vector<double> values = hypercube::value_table(q, threads);
    const double inv = std::ldexp(1.0, -static_cast<int>(q.var_count()));
    const double cut = sigma / (4.0 * std::sqrt(b));
    const uint64_t tail_hits =
        par::count_indexed(values.size(), threads, [&](uint64_t i) { return values[i] - mean >= cut; });
    const uint64_t median_hits =
        par::count_indexed(values.size(), threads, [&](uint64_t i) { return values[i] >= mean; });

    tail.lhs = floor_a;
    tail.rhs = static_cast<double>(tail_hits) * inv;
    tail.achieved_constant = tail.rhs / tail.lhs;
    tail.passed = leq_with_slack(tail.lhs, tail.rhs);

    median_like.lhs = floor_a;
    median_like.rhs = static_cast<double>(median_hits) * inv;
    median_like.achieved_constant = median_like.rhs / median_like.lhs;
    median_like.passed = leq_with_slack(median_like.lhs, median_like.rhs);
    return {tail, median_like};
}

CheckReport check_mainlmc(const std::vector<Ptf>& fs, int threads) {
    const uint32_t n = static_cast<uint32_t>(fs.size());
    if (n == 0) throw std::invalid_argument("mainlmc check needs at least one function");
    for (const auto& f : fs)
        if (f.var_count() != n)
            throw std::invalid_argument("mainlmc check requires n functions on n variables");

    std::vector<hypercube::TruthTable> tables;
    tables.reserve(n);
    for (const auto& f : fs) tables.push_back(hypercube::truth_table(f, threads));

    for (uint32_t i = 0; i < n; ++i) {
        const uint64_t bit = uint64_t{1} << i;
        const uint64_t bad = par::count_indexed(tables[i].size(), threads, [&](uint64_t x) {
            return tables[i].signs[x] != tables[i].signs[x ^ bit];
        });
        if (bad != 0)
            throw std::invalid_argument("f_" + std::to_string(i) + " depends on its own coordinate");
    }

    const uint64_t cube = uint64_t{1} << n;
    const double mean_abs = par::sum_indexed(cube, threads, [&](uint64_t x) {
                                int64_t s = 0;
                                for (uint32_t i = 0; i < n; ++i) {
                                    const int xi = (x >> i) & 1u ? 1 : -1;
                                    s += xi * tables[i].signs[x];
                                }
                                return std::fabs(static_cast<double>(s));
                            }) /
                            static_cast<double>(cube);

    double as_sum = 0.0;
    for (uint32_t i = 0; i < n; ++i) as_sum += hypercube::average_sensitivity_exact(tables[i], threads);

    CheckReport rep;
    rep.suite = "mainlmc";
    rep.instance = "n=" + std::to_string(n);
    rep.lhs = mean_abs * mean_abs;
    rep.rhs = 2.0 * as_sum + static_cast<double>(n);
    rep.achieved_constant = rep.lhs / rep.rhs;
    rep.passed = leq_with_slack(rep.lhs, rep.rhs);
    return rep;
}

std::vector<Ptf> mainlmc_tightness_instance(uint32_t n) {
    const uint32_t m = static_cast<uint32_t>(std::lround(std::sqrt(static_cast<double>(n))));
    if (m * m != n) throw std::invalid_argument("tightness construction needs a perfect square n");
    std::vector<Ptf> fs;
    fs.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        const uint32_t block = i / m;
        std::vector<uint32_t> idx;
        for (uint32_t k = block * m; k < (block + 1) * m; ++k)
            if (k != i) idx.push_back(k);
        Polynomial p(n);
        p.add_term(Monomial::from_indices(idx), 1.0);
        fs.push_back(Ptf{std::move(p), 0.0});
    }
    return fs;
}

CheckReport check_combas(const Ptf& f, int threads) {
    const uint32_t n = f.var_count();
    const uint32_t d = f.poly.degree();
    const double as = hypercube::average_sensitivity_exact(f, threads);
    const double shape = std::pow(static_cast<double>(n), 1.0 - std::ldexp(1.0, -static_cast<int>(d)));
    CheckReport rep;
    rep.suite = "combas";
    rep.instance = "n=" + std::to_string(n) + ",d=" + std::to_string(d);
    rep.lhs = as;
    rep.rhs = 3.0 * shape;
    rep.achieved_constant = as / shape;
    rep.passed = leq_with_slack(rep.lhs, rep.rhs);
    return rep;
}

CheckReport check_nstoas(const Ptf& f, int threads) {
    const uint32_t n = f.var_count();
    if (n == 0) throw std::invalid_argument("nstoas check needs n >= 1");
    const double as = hypercube::average_sensitivity_exact(f, threads);
    const double ns = hypercube::ns_exact(f, 1.0 / static_cast<double>(n), threads);
    CheckReport rep;
    rep.suite = "nstoas";
    rep.instance = "n=" + std::to_string(n) + ",d=" + std::to_string(f.poly.degree());
    rep.lhs = as;
    rep.rhs = 2.0 * static_cast<double>(n) * std::exp(1.0) * ns;
    rep.achieved_constant = rep.rhs > 0.0 ? as / rep.rhs : 0.0;
    rep.passed = leq_with_slack(rep.lhs, rep.rhs);
    return rep;
}

CheckReport check_actons(const Ptf& f, double rho, double delta, int threads) {
    if (!(rho > 0.0) || rho >= 1.0) throw std::invalid_argument("rho must lie in (0, 1)");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    // Fold the constant into the threshold, then scale the variable part to
    // unit norm (the lemma's implicit normalization).
    const double c0 = f.poly.constant_term();
    const double var_norm = std::sqrt(f.poly.variance());
    if (var_norm == 0.0) throw std::invalid_argument("actons check needs variable-dependent terms");
    const double theta = (f.theta - c0) / var_norm;
    Polynomial scaled(f.poly.var_count());
    for (const auto& [mono, coeff] : f.poly.terms())
        if (!mono.constant()) scaled.add_term(mono, coeff / var_norm);

    const uint32_t d = f.poly.degree();
    const Ptf g{scaled, theta};
    const double ns = hypercube::ns_exact(g, rho, threads);

    const std::vector<double> values = hypercube::value_table(scaled, threads);
    const double margin = 2.0 * std::sqrt(rho) / delta;
    const uint64_t near = par::count_indexed(values.size(), threads, [&](uint64_t i) {
        return std::fabs(values[i] - theta) <= margin;
    });
    const double near_prob = std::ldexp(static_cast<double>(near), -static_cast<int>(g.var_count()));

    CheckReport rep;
    rep.suite = "actons";
    rep.instance = "n=" + std::to_string(g.var_count()) + ",d=" + std::to_string(d) +
                   ",rho=" + format_double(rho) + ",delta=" + format_double(delta);
    rep.lhs = ns;
    rep.rhs = static_cast<double>(d + 1) * delta + near_prob;
    rep.achieved_constant = rep.rhs > 0.0 ? ns / rep.rhs : 0.0;
    rep.passed = leq_with_slack(rep.lhs, rep.rhs);
    return rep;
}

CheckReport check_critical_index_minimal(const Polynomial& p, double eps) {
    const structure::WeightProfile wp = structure::weight_profile(p);
    const uint32_t n = static_cast<uint32_t>(wp.sorted_w_sq.size());
    const uint32_t k = structure::critical_index(wp, eps);

    auto predicate_holds = [&](uint32_t i) {
        for (uint32_t j = i; j < n; ++j)
            if (wp.sorted_w_sq[j] > eps * eps * wp.tail_sq[i]) return false;
        return true;
    };

    bool ok = k == n || predicate_holds(k);
    for (uint32_t i = 0; ok && i < k; ++i)
        if (predicate_holds(i)) ok = false;

    CheckReport rep;
    rep.suite = "simple1";
    rep.instance = "critical-index,n=" + std::to_string(n) + ",eps=" + format_double(eps);
    rep.lhs = static_cast<double>(k);
    rep.rhs = static_cast<double>(k);
    rep.achieved_constant = static_cast<double>(k);
    rep.passed = ok;
    return rep;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    std::sort(values.begin(), values.end());
    const size_t m = values.size() / 2;
    if (values.size() % 2 == 1) return values[m];
    return 0.5 * (values[m - 1] + values[m]);
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t m = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) return std::nan("");
    const double denom = static_cast<double>(m) * sxx - sx * sx;
    return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

std::vector<CheckReport> bound_shape_reports(const std::string& suite, const std::string& instance,
                                             std::span<const double> grid,
                                             std::span<const double> values,
                                             std::span<const double> shape, double factor,
                                             bool asymptotic_at_small, uint64_t seed) {
    if (grid.size() != values.size() || grid.size() != shape.size())
        throw std::invalid_argument("bound_shape_reports: mismatched series lengths");
    std::vector<double> achieved(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) achieved[i] = values[i] / shape[i];
    const double med = median(achieved);
    const double grid_med = median(std::vector<double>(grid.begin(), grid.end()));

    std::vector<CheckReport> out;
    for (size_t i = 0; i < grid.size(); ++i) {
        const bool asymptotic_side =
            asymptotic_at_small ? grid[i] < grid_med : grid[i] > grid_med;
        CheckReport rep;
        rep.suite = suite;
        rep.instance = instance + ",grid=" + format_double(grid[i]);
        rep.lhs = achieved[i];
        rep.rhs = factor * med;
        rep.achieved_constant = achieved[i];
        rep.seed = seed;
        rep.passed = !asymptotic_side || achieved[i] <= rep.rhs + kExactSlack;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> hermite_orthonormality_reports(uint32_t n, uint32_t smax, double tol,
                                                        uint64_t samples, uint64_t seed,
                                                        int threads) {
    if (samples < 2) throw std::invalid_argument("orthonormality check needs samples >= 2");
    // All multisets over n variables of total degree <= smax.
    std::vector<Monomial> sets;
    std::vector<Monomial::Entry> cur;
    std::function<void(uint32_t, uint32_t)> enumerate = [&](uint32_t var, uint32_t budget) {
        if (var == n) {
            sets.emplace_back(std::vector<Monomial::Entry>(cur));
            return;
        }
        enumerate(var + 1, budget);
        for (uint32_t mult = 1; mult <= budget; ++mult) {
            cur.emplace_back(var, mult);
            enumerate(var + 1, budget - mult);
            cur.pop_back();
        }
    };
    enumerate(0, smax);
    std::sort(sets.begin(), sets.end());

    const size_t count = sets.size();
    const size_t pairs = count * (count + 1) / 2;

    // Deterministic blockwise accumulation of per-pair sums and square sums.
    const uint64_t block = 8192;
    const uint64_t nblocks = (samples + block - 1) / block;
    std::vector<std::vector<double>> sum_part(nblocks), sq_part(nblocks);
    const int nt = par::resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int64_t b = 0; b < static_cast<int64_t>(nblocks); ++b) {
        auto& sums = sum_part[static_cast<size_t>(b)];
        auto& sqs = sq_part[static_cast<size_t>(b)];
        sums.assign(pairs, 0.0);
        sqs.assign(pairs, 0.0);
        std::vector<double> x(n);
        std::vector<double> hs(count);
        std::vector<std::vector<double>> rows(n);
        const uint64_t lo = static_cast<uint64_t>(b) * block;
        const uint64_t hi = std::min<uint64_t>(samples, lo + block);
        for (uint64_t s = lo; s < hi; ++s) {
            RandomStream rs(seed, s);
            for (uint32_t v = 0; v < n; ++v) x[v] = rs.next_gaussian();
            for (uint32_t v = 0; v < n; ++v) rows[v] = gaussian::hermite_univariate_row(smax, x[v]);
            for (size_t si = 0; si < count; ++si) {
                double prod = 1.0;
                for (const auto& [idx, mult] : sets[si].entries()) prod *= rows[idx][mult];
                hs[si] = prod;
            }
            size_t pair_idx = 0;
            for (size_t a = 0; a < count; ++a) {
                for (size_t c = a; c < count; ++c, ++pair_idx) {
                    const double v = hs[a] * hs[c];
                    sums[pair_idx] += v;
                    sqs[pair_idx] += v * v;
                }
            }
        }
    }
    std::vector<double> sums(pairs, 0.0), sqs(pairs, 0.0);
    for (uint64_t b = 0; b < nblocks; ++b) {
        for (size_t k = 0; k < pairs; ++k) {
            sums[k] += sum_part[b][k];
            sqs[k] += sq_part[b][k];
        }
    }

    auto set_name = [](const Monomial& s) {
        if (s.constant()) return std::string("1");
        std::string out;
        for (const auto& [idx, mult] : s.entries()) {
            if (!out.empty()) out += '*';
            out += "H" + std::to_string(mult) + "(x" + std::to_string(idx) + ")";
        }
        return out;
    };

    std::vector<CheckReport> out;
    size_t pair_idx = 0;
    const double m = static_cast<double>(samples);
    for (size_t a = 0; a < count; ++a) {
        for (size_t c = a; c < count; ++c, ++pair_idx) {
            const double mean = sums[pair_idx] / m;
            double var = (sqs[pair_idx] - m * mean * mean) / (m - 1.0);
            if (var < 0.0) var = 0.0;
            const double hw = 3.0 * std::sqrt(var / m);
            const double target = a == c ? 1.0 : 0.0;
            CheckReport rep;
            rep.suite = "hermite";
            rep.instance = "orthonormality," + set_name(sets[a]) + "|" + set_name(sets[c]);
            rep.lhs = std::fabs(mean - target);
            rep.rhs = tol;
            rep.achieved_constant = rep.lhs;
            rep.seed = seed;
            const double lo = mean - hw, hi = mean + hw;
            const bool inside = lo >= target - tol && hi <= target + tol;
            const bool outside = hi < target - tol || lo > target + tol;
            rep.passed = inside;
            rep.inconclusive = !inside && !outside;
            out.push_back(std::move(rep));
        }
    }
    return out;
}

double hermite_taylor_max_error(uint32_t smax, uint32_t trials, uint64_t seed) {
    double worst = 0.0;
    for (uint32_t t = 0; t < trials; ++t) {
        RandomStream rs(seed, t);
        // Random multiset of total degree in [1, smax] over up to smax vars.
        const uint32_t total = 1 + static_cast<uint32_t>(rs.next_u64() % smax);
        std::vector<uint32_t> mult(smax, 0);
        for (uint32_t unit = 0; unit < total; ++unit) ++mult[rs.next_u64() % smax];
        std::vector<Monomial::Entry> entries;
        for (uint32_t v = 0; v < smax; ++v)
            if (mult[v] > 0) entries.emplace_back(v, mult[v]);
        const Monomial s{std::move(entries)};

        std::vector<double> x(smax), z(smax);
        for (uint32_t v = 0; v < smax; ++v) {
            x[v] = 4.0 * rs.next_unit() - 2.0;
            z[v] = 4.0 * rs.next_unit() - 2.0;
        }
        const double direct = gaussian::hermite_multivariate(s, z);
        const double taylor = gaussian::hermite_taylor_about(s, x, z);
        worst = std::max(worst, std::fabs(direct - taylor));
    }
    return worst;
}

double hermite_derivative_max_error(uint32_t kmax, double x_limit, uint32_t grid_points) {
    const double h = 1e-5;
    double worst = 0.0;
    for (uint32_t k = 1; k <= kmax; ++k) {
        for (uint32_t g = 0; g < grid_points; ++g) {
            const double x = -x_limit + 2.0 * x_limit * static_cast<double>(g) /
                                            static_cast<double>(grid_points - 1);
            const double numeric =
                (gaussian::hermite_univariate(k, x + h) - gaussian::hermite_univariate(k, x - h)) /
                (2.0 * h);
            const double analytic =
                std::sqrt(static_cast<double>(k)) * gaussian::hermite_univariate(k - 1, x);
            worst = std::max(worst, std::fabs(numeric - analytic));
        }
    }
    return worst;
}

CheckReport perturbation_match_report(const Polynomial& p, double delta, uint64_t samples,
                                      uint64_t seed, int threads) {
    const double closed = gaussian::perturbation_norm_sq(p, delta);
    const Estimate mc = gaussian::perturbation_norm_sq_mc(p, delta, samples, seed, threads);
    CheckReport rep;
    rep.suite = "smallq";
    rep.instance = "match,n=" + std::to_string(p.var_count()) + ",d=" + std::to_string(p.degree()) +
                   ",delta=" + format_double(delta);
    rep.lhs = std::fabs(closed - mc.value);
    rep.rhs = mc.half_width;
    rep.achieved_constant = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
    rep.seed = seed;
    rep.passed = rep.lhs <= rep.rhs;
    return rep;
}

CheckReport perturbation_slope_report(const Polynomial& p, std::span<const double> deltas,
                                      double tol) {
    std::vector<double> norms(deltas.size());
    for (size_t i = 0; i < deltas.size(); ++i)
        norms[i] = std::sqrt(gaussian::perturbation_norm_sq(p, deltas[i]));
    const double slope = fit_loglog_slope(deltas, norms);
    CheckReport rep;
    rep.suite = "smallq";
    rep.instance = "slope,n=" + std::to_string(p.var_count()) + ",d=" + std::to_string(p.degree());
    rep.lhs = std::fabs(slope - 0.5);
    rep.rhs = tol;
    rep.achieved_constant = slope;
    rep.passed = rep.lhs <= rep.rhs;
    return rep;
}

// ---- suite registry ----

namespace {

using Suite = std::function<std::vector<CheckReport>(const SuiteConfig&)>;

uint64_t instance_count(const SuiteConfig& cfg, uint64_t fallback) {
    return cfg.trials > 0 ? cfg.trials : fallback;
}

Polynomial random_instance(uint64_t seed, uint64_t k, uint32_t n_lo, uint32_t n_hi, uint32_t d_lo,
                           uint32_t d_hi, CoefficientModel model = CoefficientModel::UnitGaussian) {
    RandomStream rs(seed, k);
    const uint32_t n = n_lo + static_cast<uint32_t>(rs.next_u64() % (n_hi - n_lo + 1));
    const uint32_t d = d_lo + static_cast<uint32_t>(rs.next_u64() % (d_hi - d_lo + 1));
    return random_polynomial(n, std::min(d, n), model, rs.next_u64());
}

std::vector<CheckReport> suite_hypercon(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 60);
    for (uint64_t k = 0; k < count; ++k) {
        RandomStream rs(cfg.seed, k);
        const uint32_t n = 4 + static_cast<uint32_t>(rs.next_u64() % 7);  // 4..10
        const uint32_t dq = 1 + static_cast<uint32_t>(rs.next_u64() % 4);
        const uint32_t dr = 1 + static_cast<uint32_t>(rs.next_u64() % 4);
        const Polynomial q =
            random_polynomial(n, std::min(dq, n), CoefficientModel::UnitGaussian, rs.next_u64());
        const Polynomial r =
            random_polynomial(n, std::min(dr, n), CoefficientModel::UnitGaussian, rs.next_u64());
        auto rep = check_hypercontractivity(q, r, cfg.threads);
        rep.seed = cfg.seed;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> suite_lower_bounds(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 60);
    for (uint64_t k = 0; k < count; ++k) {
        const Polynomial q = random_instance(cfg.seed, k, 4, 10, 1, 3);
        auto [a, b] = check_poly_lower_bounds(q, cfg.threads);
        a.seed = cfg.seed;
        b.seed = cfg.seed;
        out.push_back(std::move(a));
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<CheckReport> suite_mainlmc(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 30);
    for (uint64_t k = 0; k < count; ++k) {
        RandomStream rs(cfg.seed, k);
        const uint32_t n = 4 + static_cast<uint32_t>(rs.next_u64() % 7);  // 4..10
        std::vector<Ptf> fs;
        for (uint32_t i = 0; i < n; ++i) {
            Polynomial p = random_polynomial(n, 1, CoefficientModel::UnitGaussian, rs.next_u64());
            // Zero the function's own coordinate so f_i ignores x_i.
            const double own = p.coefficient(Monomial::from_indices({i}));
            if (own != 0.0) p.add_term(Monomial::from_indices({i}), -own);
            fs.push_back(Ptf{std::move(p), 0.0});
        }
        auto rep = check_mainlmc(fs, cfg.threads);
        rep.seed = cfg.seed;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> suite_tightness(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    for (uint32_t n : {4u, 9u, 16u}) {
        auto rep = check_mainlmc(mainlmc_tightness_instance(n), cfg.threads);
        rep.suite = "tightness";
        rep.seed = cfg.seed;
        // Tightness demands the ratio exceeds 1/4 as well as the inequality.
        rep.passed = rep.passed && rep.achieved_constant > 0.25;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> suite_combas(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 90);
    for (uint64_t k = 0; k < count; ++k) {
        const Polynomial p = random_instance(cfg.seed, k, 6, 12, 1, 3);
        auto rep = check_combas(Ptf{p, 0.0}, cfg.threads);
        rep.seed = cfg.seed;
        out.push_back(std::move(rep));
    }
    for (uint32_t n = 3; n <= 15; n += 2) {
        auto rep = check_combas(Ptf{majority_polynomial(n), 0.0}, cfg.threads);
        rep.instance = "maj" + std::to_string(n);
        rep.seed = cfg.seed;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> suite_nstoas(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 60);
    for (uint64_t k = 0; k < count; ++k) {
        const Polynomial p = random_instance(cfg.seed, k, 4, 10, 1, 3);
        auto rep = check_nstoas(Ptf{p, 0.0}, cfg.threads);
        rep.seed = cfg.seed;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> suite_actons(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 30);
    const double rhos[] = {0.01, 0.04, 0.09};
    const double deltas[] = {0.1, 0.2, 0.3};
    for (uint64_t k = 0; k < count; ++k) {
        const Polynomial p = random_instance(cfg.seed, k, 4, 10, 1, 2);
        for (double rho : rhos) {
            for (double delta : deltas) {
                auto rep = check_actons(Ptf{p, 0.0}, rho, delta, cfg.threads);
                rep.seed = cfg.seed;
                out.push_back(std::move(rep));
            }
        }
    }
    return out;
}

std::vector<CheckReport> suite_simple1(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 100);
    const double eps_grid[] = {0.1, 0.25, 0.5, 0.9};
    for (uint64_t k = 0; k < count; ++k) {
        RandomStream rs(cfg.seed, k);
        const CoefficientModel model =
            (k % 3 == 0) ? CoefficientModel::BlockStructured : CoefficientModel::UnitGaussian;
        const uint32_t n = 6 + static_cast<uint32_t>(rs.next_u64() % 9);
        const uint32_t d = 1 + static_cast<uint32_t>(rs.next_u64() % 3);
        const Polynomial p = random_polynomial(n, std::min(d, n), model, rs.next_u64());
        for (double eps : eps_grid) {
            auto rep = check_critical_index_minimal(p, eps);
            rep.seed = cfg.seed;
            out.push_back(std::move(rep));

            CheckReport decay;
            decay.suite = "simple1";
            decay.instance = "sigma-decay,n=" + std::to_string(n) + ",eps=" + format_double(eps);
            decay.passed = structure::sigma_decay_check(p, eps);
            decay.lhs = decay.passed ? 0.0 : 1.0;
            decay.rhs = 0.0;
            decay.seed = cfg.seed;
            out.push_back(std::move(decay));
        }
    }
    return out;
}

CheckReport experiment_report(const std::string& suite, const std::string& instance,
                              const Estimate& est, double floor) {
    CheckReport rep;
    rep.suite = suite;
    rep.instance = instance;
    rep.lhs = floor;
    rep.rhs = est.value;
    rep.achieved_constant = est.value;
    rep.seed = est.seed;
    if (est.lo() >= floor) {
        rep.passed = true;
    } else if (est.hi() < floor) {
        rep.passed = false;
    } else {
        rep.inconclusive = true;
    }
    return rep;
}

std::vector<CheckReport> suite_case1(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t trials = instance_count(cfg, 800);
    structure::ExperimentConfig ec;
    ec.a_d = cfg.a_d;
    ec.b_d = cfg.b_d;
    ec.c_d = cfg.c_d;
    {
        const Polynomial p = random_polynomial(16, 2, CoefficientModel::UnitGaussian, cfg.seed);
        const Estimate est = structure::restriction_experiment(
            Ptf{p, 0.0}, 0.3, structure::RestrictionMode::Regularity, trials, cfg.seed, ec,
            cfg.threads);
        out.push_back(experiment_report("case1", "gaussian,n=16,d=2,eps=0.3", est, cfg.gamma_d));
    }
    {
        const Polynomial p = random_polynomial(16, 1, CoefficientModel::BlockStructured, cfg.seed);
        const Estimate est = structure::restriction_experiment(
            Ptf{p, 0.0}, 0.5, structure::RestrictionMode::Regularity, trials, cfg.seed, ec,
            cfg.threads);
        out.push_back(experiment_report("case1", "block,n=16,d=1,eps=0.5", est, cfg.gamma_d));
    }
    return out;
}

std::vector<CheckReport> suite_case2(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t trials = instance_count(cfg, 800);
    structure::ExperimentConfig ec;
    ec.a_d = cfg.a_d;
    ec.b_d = cfg.b_d;
    ec.c_d = cfg.c_d;
    for (uint32_t d : {1u, 2u}) {
        const Polynomial p = random_polynomial(12, d, CoefficientModel::BlockStructured, cfg.seed);
        const Estimate est = structure::restriction_experiment(
            Ptf{p, 0.0}, 0.5, structure::RestrictionMode::Determining, trials, cfg.seed, ec,
            cfg.threads);
        out.push_back(experiment_report("case2", "block,n=12,d=" + std::to_string(d) + ",eps=0.5",
                                        est, cfg.delta_d));
    }
    return out;
}

std::vector<CheckReport> suite_mainlmns(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t assignments = instance_count(cfg, 128);
    struct Case {
        const char* name;
        CoefficientModel model;
        uint32_t n, d;
        double eps;
    };
    const Case cases[] = {
        {"block,n=12,d=2,eps=0.25", CoefficientModel::BlockStructured, 12, 2, 0.25},
        {"gaussian,n=12,d=2,eps=0.25", CoefficientModel::UnitGaussian, 12, 2, 0.25},
    };
    for (const Case& c : cases) {
        const Polynomial p = random_polynomial(c.n, c.d, c.model, cfg.seed);
        const Ptf f{p, 0.0};
        const structure::WeightProfile wp = structure::weight_profile(p);
        const uint32_t k = structure::critical_index(wp, c.eps);
        const uint32_t l = structure::determining_block_length(c.eps, cfg.c_d);
        const uint32_t m = std::min(k, l);
        const double ns_cap =
            cfg.big_delta_d * std::pow(c.eps, 1.0 / (2.0 * static_cast<double>(c.d) + 2.0));

        uint64_t good = 0;
        const uint64_t total = m == 0 ? 1 : assignments;
        for (uint64_t a = 0; a < total; ++a) {
            RandomStream rs(cfg.seed, a);
            Restriction r;
            for (uint32_t b = 0; b < m; ++b) r.assign(wp.perm[b], rs.next_sign());
            const Polynomial q = f.poly.restricted(r);
            bool variable_free = true;
            for (const auto& [mono, coeff] : q.terms())
                if (!mono.constant()) {
                    variable_free = false;
                    break;
                }
            double ns = 0.0;
            if (!variable_free) ns = hypercube::ns_exact(Ptf{q, f.theta}, c.eps, cfg.threads);
            if (ns <= ns_cap) ++good;
        }
        const double fraction = static_cast<double>(good) / static_cast<double>(total);
        CheckReport rep;
        rep.suite = "mainlmns";
        rep.instance = c.name;
        rep.lhs = cfg.alpha_d;
        rep.rhs = fraction;
        rep.achieved_constant = fraction;
        rep.seed = cfg.seed;
        rep.passed = fraction >= cfg.alpha_d;
        out.push_back(std::move(rep));
    }
    return out;
}

std::vector<CheckReport> suite_ns_bound(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    // Majority family, Monte Carlo.
    {
        const uint32_t n = 301;
        const Ptf f{majority_polynomial(n), 0.0};
        const std::vector<double> grid = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
        std::vector<double> values(grid.size()), shape(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            values[i] = hypercube::ns_mc(f, grid[i], 100000, 0.99, cfg.seed, cfg.threads).value;
            shape[i] = std::pow(grid[i], 1.0 / 10.0);
        }
        auto reps = bound_shape_reports("ns-bound", "maj301,d=1,exp=1/10", grid, values, shape,
                                        cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    // Exact degree-2 instance.
    {
        const Polynomial p = random_polynomial(10, 2, CoefficientModel::UnitGaussian, cfg.seed);
        const Ptf f{p, 0.0};
        const std::vector<double> grid = {0.01, 0.02, 0.04, 0.07, 0.1};
        std::vector<double> values(grid.size()), shape(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            values[i] = hypercube::ns_exact(f, grid[i], cfg.threads);
            shape[i] = std::pow(grid[i], 1.0 / 14.0);
        }
        auto reps = bound_shape_reports("ns-bound", "gaussian,n=10,d=2,exp=1/14", grid, values,
                                        shape, cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<CheckReport> suite_as_bound(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    {
        std::vector<double> grid, values, shape;
        for (uint32_t n = 5; n <= 15; n += 2) {
            const Ptf f{majority_polynomial(n), 0.0};
            grid.push_back(n);
            values.push_back(hypercube::average_sensitivity_exact(f, cfg.threads));
            shape.push_back(std::pow(static_cast<double>(n), 1.0 - 1.0 / 10.0));
        }
        auto reps = bound_shape_reports("as-bound", "maj-family,d=1,exp=1-1/10", grid, values, shape,
                                        cfg.drift_factor, false, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    {
        std::vector<double> grid, values, shape;
        for (uint32_t n = 8; n <= 14; n += 2) {
            const Polynomial p =
                random_polynomial(n, 2, CoefficientModel::UnitGaussian, derive_seed(cfg.seed, n));
            grid.push_back(n);
            values.push_back(hypercube::average_sensitivity_exact(Ptf{p, 0.0}, cfg.threads));
            shape.push_back(std::pow(static_cast<double>(n), 1.0 - 1.0 / 14.0));
        }
        auto reps = bound_shape_reports("as-bound", "gaussian,d=2,exp=1-1/14", grid, values, shape,
                                        cfg.drift_factor, false, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<CheckReport> suite_ns_regular(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const Polynomial p = random_polynomial(12, 2, CoefficientModel::UnitGaussian, cfg.seed);
    const structure::WeightProfile wp = structure::weight_profile(p);
    const double eps_min = std::sqrt(wp.regular_stat);
    const Ptf f{p, 0.0};
    std::vector<double> grid, values, shape;
    for (double eps = std::max(2.0 * eps_min, 0.02); eps <= 0.5; eps *= 1.6) {
        if (!structure::is_regular(p, eps)) continue;
        grid.push_back(eps);
        values.push_back(hypercube::ns_exact(f, eps, cfg.threads));
        shape.push_back(std::pow(eps, 1.0 / 6.0));
    }
    if (grid.size() >= 3) {
        auto reps = bound_shape_reports("nsregular", "gaussian,n=12,d=2,exp=1/6", grid, values,
                                        shape, cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<CheckReport> suite_gns_bound(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    // Ellipsoid x0^2 + x1^2 - 1, degree 2.
    {
        Polynomial p(2);
        p.add_term(Monomial::from_indices({0, 0}), 1.0);
        p.add_term(Monomial::from_indices({1, 1}), 1.0);
        p.add_term(Monomial{}, -1.0);
        const Ptf f{p, 0.0};
        const std::vector<double> grid = {0.003, 0.01, 0.03, 0.1};
        std::vector<double> values(grid.size()), shape(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            values[i] = gaussian::gns_mc(f, grid[i], 200000, 0.99, cfg.seed, cfg.threads).value;
            shape[i] = std::pow(grid[i], 1.0 / 5.0);
        }
        auto reps = bound_shape_reports("gns-bound", "ellipsoid,d=2,exp=1/5", grid, values, shape,
                                        cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    // Dictator, degree 1.
    {
        Polynomial p(1);
        p.add_term(Monomial::from_indices({0}), 1.0);
        const Ptf f{p, 0.0};
        const std::vector<double> grid = {0.003, 0.01, 0.03, 0.1};
        std::vector<double> values(grid.size()), shape(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            values[i] = gaussian::gns_mc(f, grid[i], 200000, 0.99, cfg.seed, cfg.threads).value;
            shape[i] = std::pow(grid[i], 1.0 / 3.0);
        }
        auto reps = bound_shape_reports("gns-bound", "dictator,d=1,exp=1/3", grid, values, shape,
                                        cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<CheckReport> suite_smallq(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 8);
    const std::vector<double> deltas = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
    for (uint64_t k = 0; k < count; ++k) {
        RandomStream rs(cfg.seed, k);
        const uint32_t n = 2 + static_cast<uint32_t>(rs.next_u64() % 4);
        const uint32_t d = 1 + static_cast<uint32_t>(rs.next_u64() % 3);
        Polynomial p =
            random_polynomial(n, std::min(d, n), CoefficientModel::UnitGaussian, rs.next_u64());
        if (k % 2 == 1) {
            // Mix in a non-multilinear term.
            p.add_term(Monomial::from_indices({0, 0}), 0.5);
        }
        auto match =
            perturbation_match_report(p, 0.05, 200000, derive_seed(cfg.seed, k), cfg.threads);
        out.push_back(std::move(match));
        auto slope = perturbation_slope_report(p, deltas, 0.05);
        slope.seed = cfg.seed;
        out.push_back(std::move(slope));
    }
    return out;
}

std::vector<CheckReport> suite_cw(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 4);
    const std::vector<double> alphas = {0.05, 0.1, 0.2, 0.4, 0.8};
    for (uint64_t k = 0; k < count; ++k) {
        RandomStream rs(cfg.seed, k);
        const uint32_t n = 2 + static_cast<uint32_t>(rs.next_u64() % 5);
        const uint32_t d = 1 + static_cast<uint32_t>(rs.next_u64() % 2);
        const Polynomial p =
            random_polynomial(n, std::min(d, n), CoefficientModel::UnitGaussian, rs.next_u64());
        std::vector<double> values(alphas.size()), shape(alphas.size());
        for (size_t i = 0; i < alphas.size(); ++i) {
            values[i] = gaussian::anticoncentration_gaussian_mc(p, -alphas[i] / 2.0, alphas[i] / 2.0,
                                                                200000, 0.99,
                                                                derive_seed(cfg.seed, k), cfg.threads)
                            .value;
            shape[i] = static_cast<double>(d) * std::pow(alphas[i], 1.0 / static_cast<double>(d));
        }
        auto reps = bound_shape_reports("cw",
                                        "gaussian,n=" + std::to_string(n) + ",d=" + std::to_string(d),
                                        alphas, values, shape, cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<CheckReport> suite_regac(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    const uint64_t count = instance_count(cfg, 4);
    const std::vector<double> alphas = {0.1, 0.2, 0.4, 0.8};
    for (uint64_t k = 0; k < count; ++k) {
        RandomStream rs(cfg.seed, k);
        const uint32_t n = 10 + 2 * static_cast<uint32_t>(rs.next_u64() % 3);
        const uint32_t d = 1 + static_cast<uint32_t>(rs.next_u64() % 2);
        const Polynomial p =
            random_polynomial(n, std::min(d, n), CoefficientModel::UnitGaussian, rs.next_u64());
        const structure::WeightProfile wp = structure::weight_profile(p);
        const double eps = std::sqrt(wp.regular_stat);
        const double eps_term = std::pow(eps, 2.0 / (4.0 * static_cast<double>(d) + 1.0));
        std::vector<double> values(alphas.size()), shape(alphas.size());
        for (size_t i = 0; i < alphas.size(); ++i) {
            values[i] = gaussian::anticoncentration_hypercube_exact(p, -alphas[i] / 2.0,
                                                                    alphas[i] / 2.0, cfg.threads);
            shape[i] = std::pow(alphas[i], 1.0 / static_cast<double>(d)) + eps_term;
        }
        auto reps = bound_shape_reports("regac",
                                        "cube,n=" + std::to_string(n) + ",d=" + std::to_string(d) +
                                            ",eps=" + format_double(eps),
                                        alphas, values, shape, cfg.drift_factor, true, cfg.seed);
        out.insert(out.end(), reps.begin(), reps.end());
    }
    return out;
}

std::vector<CheckReport> suite_invariance(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    std::vector<double> t_grid;
    for (double t = -3.0; t <= 3.0 + 1e-12; t += 0.05) t_grid.push_back(t);
    std::vector<double> grid, values, shape;
    for (uint32_t n : {10u, 14u, 18u}) {
        const Polynomial p = majority_polynomial(n);
        const double eps = 1.0 / std::sqrt(static_cast<double>(n));
        const double gap =
            gaussian::invariance_gap(p, eps, t_grid, 200000, derive_seed(cfg.seed, n), cfg.threads);
        grid.push_back(eps);
        values.push_back(gap);
        shape.push_back(std::pow(eps, 2.0 / 5.0));
    }
    auto reps = bound_shape_reports("invariance", "maj-family,d=1,exp=2/5", grid, values, shape,
                                    cfg.drift_factor, true, cfg.seed);
    out.insert(out.end(), reps.begin(), reps.end());
    return out;
}

std::vector<CheckReport> suite_hermite(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    auto ortho = hermite_orthonormality_reports(3, 3, 0.01, 200000, cfg.seed, cfg.threads);
    out.insert(out.end(), ortho.begin(), ortho.end());

    CheckReport taylor;
    taylor.suite = "hermite";
    taylor.instance = "taylor,|S|<=3";
    taylor.lhs = hermite_taylor_max_error(3, 200, cfg.seed);
    taylor.rhs = 1e-8;
    taylor.achieved_constant = taylor.lhs;
    taylor.seed = cfg.seed;
    taylor.passed = taylor.lhs <= taylor.rhs;
    out.push_back(std::move(taylor));

    CheckReport deriv;
    deriv.suite = "hermite";
    deriv.instance = "derivative,k<=6";
    deriv.lhs = hermite_derivative_max_error(6, 3.0, 61);
    deriv.rhs = 1e-8;
    deriv.achieved_constant = deriv.lhs;
    deriv.seed = cfg.seed;
    deriv.passed = deriv.lhs <= deriv.rhs;
    out.push_back(std::move(deriv));
    return out;
}

const std::vector<std::pair<std::string, Suite>>& registry() {
    static const std::vector<std::pair<std::string, Suite>> suites = {
        {"hypercon", suite_hypercon},
        {"lower-bounds", suite_lower_bounds},
        {"mainlmc", suite_mainlmc},
        {"tightness", suite_tightness},
        {"combas", suite_combas},
        {"nstoas", suite_nstoas},
        {"actons", suite_actons},
        {"simple1", suite_simple1},
        {"case1", suite_case1},
        {"case2", suite_case2},
        {"mainlmns", suite_mainlmns},
        {"ns-bound", suite_ns_bound},
        {"as-bound", suite_as_bound},
        {"nsregular", suite_ns_regular},
        {"gns-bound", suite_gns_bound},
        {"smallq", suite_smallq},
        {"cw", suite_cw},
        {"regac", suite_regac},
        {"invariance", suite_invariance},
        {"hermite", suite_hermite},
    };
    return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) names.push_back(name);
    return names;
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "all") {
        std::vector<CheckReport> out;
        for (const auto& [suite_name, fn] : registry()) {
            auto reps = fn(cfg);
            out.insert(out.end(), reps.begin(), reps.end());
        }
        return out;
    }
    for (const auto& [suite_name, fn] : registry())
        if (suite_name == name) return fn(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace ptf::verify
