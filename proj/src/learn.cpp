#include "ptf/learn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ptf/parallel.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"

namespace ptf::learn {

namespace {

void require_table_size(uint32_t n) {
    if (static_cast<int>(n) > exact_limit() || n >= 63)
        throw std::invalid_argument("learner requires n within the exact-table limit");
}

}  // namespace

LabeledSample sample_from_ptf(const Ptf& target, double noise_rate, uint64_t m, uint64_t seed) {
    require_table_size(target.var_count());
    if (noise_rate < 0.0 || noise_rate >= 1.0) throw std::invalid_argument("noise rate must lie in [0, 1)");
    if (m < 1) throw std::invalid_argument("sample size must be >= 1");
    const hypercube::TruthTable table = hypercube::truth_table(target);
    LabeledSample out;
    out.n = target.var_count();
    out.points.resize(m);
    out.labels.resize(m);
    out.source = "ptf+noise";
    out.seed = seed;
    out.noise_rate = noise_rate;
    const uint64_t cube_mask = (uint64_t{1} << out.n) - 1;
    for (uint64_t i = 0; i < m; ++i) {
        RandomStream rs(seed, i);
        const uint64_t x = rs.next_u64() & cube_mask;
        int8_t y = table.signs[x];
        if (noise_rate > 0.0 && rs.next_bernoulli(noise_rate)) y = static_cast<int8_t>(-y);
        out.points[i] = x;
        out.labels[i] = y;
    }
    return out;
}

LabeledSample full_cube_sample(const Ptf& target) {
    require_table_size(target.var_count());
    const hypercube::TruthTable table = hypercube::truth_table(target);
    LabeledSample out;
    out.n = target.var_count();
    out.points.resize(table.size());
    out.labels = table.signs;
    out.source = "full-cube";
    for (uint64_t i = 0; i < table.size(); ++i) out.points[i] = i;
    return out;
}

uint64_t degree_for_accuracy(uint32_t d, double eps, double A) {
    if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("eps must lie in (0, 1]");
    if (!(A > 0.0)) throw std::invalid_argument("A must be positive");
    const double exponent = static_cast<double>(4 * d + 6);
    const double delta_star = std::pow(eps * eps / (4.0 * A), exponent);
    const double inv = std::ceil(1.0 / delta_star);
    if (!(inv >= 1.0)) return 1;
    if (inv >= 4.6e18) return uint64_t{1} << 62;
    return static_cast<uint64_t>(inv);
}

uint64_t regression_column_count(uint32_t n, uint64_t D) {
    const uint64_t deg = std::min<uint64_t>(D, n);
    uint64_t total = 0;
    double binom = 1.0;  // C(n, 0)
    for (uint64_t k = 0; k <= deg; ++k) {
        if (binom > 1e18) return uint64_t{1} << 62;
        total += static_cast<uint64_t>(binom);
        binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return total;
}

namespace {

std::vector<uint64_t> monomial_masks(uint32_t n, uint32_t deg) {
    std::vector<uint64_t> masks{0};
    std::vector<uint32_t> idx;
    for (uint32_t k = 1; k <= deg; ++k) {
        idx.assign(k, 0);
        for (uint32_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            uint64_t m = 0;
            for (uint32_t i : idx) m |= uint64_t{1} << i;
            masks.push_back(m);
            int i = static_cast<int>(k) - 1;
            while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + static_cast<uint32_t>(i)) --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (uint32_t j = static_cast<uint32_t>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return masks;
}

void fill_phi(const std::vector<uint64_t>& masks, uint64_t x, double* phi) {
    for (size_t j = 0; j < masks.size(); ++j)
        phi[j] = (std::popcount(~x & masks[j]) & 1u) ? -1.0 : 1.0;
}

// Plain Cholesky; returns false on a pivot below tolerance (rank deficiency).
bool cholesky_solve(std::vector<double> g, std::vector<double> b, size_t p, std::vector<double>* out) {
    double max_diag = 0.0;
    for (size_t i = 0; i < p; ++i) max_diag = std::max(max_diag, g[i * p + i]);
    const double tol = 1e-10 * std::max(max_diag, 1.0);
    for (size_t k = 0; k < p; ++k) {
        double d = g[k * p + k];
        for (size_t j = 0; j < k; ++j) d -= g[k * p + j] * g[k * p + j];
        if (d <= tol) return false;
        const double root = std::sqrt(d);
        g[k * p + k] = root;
        for (size_t i = k + 1; i < p; ++i) {
            double v = g[i * p + k];
            for (size_t j = 0; j < k; ++j) v -= g[i * p + j] * g[k * p + j];
            g[i * p + k] = v / root;
        }
    }
    // Forward then backward substitution.
    for (size_t i = 0; i < p; ++i) {
        double v = b[i];
        for (size_t j = 0; j < i; ++j) v -= g[i * p + j] * b[j];
        b[i] = v / g[i * p + i];
    }
    for (size_t i = p; i-- > 0;) {
        double v = b[i];
        for (size_t j = i + 1; j < p; ++j) v -= g[j * p + i] * b[j];
        b[i] = v / g[i * p + i];
    }
    *out = std::move(b);
    return true;
}

// Cyclic Jacobi eigendecomposition for the minimum-norm fallback.
std::vector<double> min_norm_solve(std::vector<double> g, const std::vector<double>& b, size_t p) {
    std::vector<double> v(p * p, 0.0);
    for (size_t i = 0; i < p; ++i) v[i * p + i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < p; ++i)
            for (size_t j = i + 1; j < p; ++j) off += g[i * p + j] * g[i * p + j];
        if (off < 1e-24 * static_cast<double>(p * p)) break;
        for (size_t i = 0; i < p; ++i) {
            for (size_t j = i + 1; j < p; ++j) {
                const double a_ij = g[i * p + j];
                if (std::fabs(a_ij) < 1e-300) continue;
                const double a_ii = g[i * p + i];
                const double a_jj = g[j * p + j];
                const double phi = 0.5 * std::atan2(2.0 * a_ij, a_ii - a_jj);
                const double c = std::cos(phi);
                const double s = std::sin(phi);
                for (size_t k = 0; k < p; ++k) {
                    const double gik = g[i * p + k];
                    const double gjk = g[j * p + k];
                    g[i * p + k] = c * gik + s * gjk;
                    g[j * p + k] = -s * gik + c * gjk;
                }
                for (size_t k = 0; k < p; ++k) {
                    const double gki = g[k * p + i];
                    const double gkj = g[k * p + j];
                    g[k * p + i] = c * gki + s * gkj;
                    g[k * p + j] = -s * gki + c * gkj;
                }
                for (size_t k = 0; k < p; ++k) {
                    const double vki = v[k * p + i];
                    const double vkj = v[k * p + j];
                    v[k * p + i] = c * vki + s * vkj;
                    v[k * p + j] = -s * vki + c * vkj;
                }
            }
        }
    }
    double lambda_max = 0.0;
    for (size_t i = 0; i < p; ++i) lambda_max = std::max(lambda_max, g[i * p + i]);
    const double cutoff = 1e-10 * std::max(lambda_max, 1.0);
    std::vector<double> c(p, 0.0);
    for (size_t i = 0; i < p; ++i) {
        const double lambda = g[i * p + i];
        if (lambda <= cutoff) continue;
        double proj = 0.0;
        for (size_t k = 0; k < p; ++k) proj += v[k * p + i] * b[k];
        proj /= lambda;
        for (size_t k = 0; k < p; ++k) c[k] += proj * v[k * p + i];
    }
    return c;
}

}  // namespace

Hypothesis fit(const LabeledSample& sample, uint64_t D, uint64_t column_budget, int threads) {
    if (sample.size() == 0) throw std::invalid_argument("cannot fit an empty sample");
    const uint32_t n = sample.n;
    const uint32_t deg = static_cast<uint32_t>(std::min<uint64_t>(D, n));
    const uint64_t cols = regression_column_count(n, deg);
    if (cols > column_budget)
        throw budget_error("regression needs " + std::to_string(cols) + " columns, budget is " +
                           std::to_string(column_budget));
    const std::vector<uint64_t> masks = monomial_masks(n, deg);
    const size_t p = masks.size();

    // Aggregate duplicated points; every sum below is over unique points
    // with multiplicities, in ascending point order.
    std::map<uint64_t, std::pair<double, double>> agg;  // point -> (count, label sum)
    for (size_t i = 0; i < sample.size(); ++i) {
        auto& slot = agg[sample.points[i]];
        slot.first += 1.0;
        slot.second += sample.labels[i];
    }
    std::vector<uint64_t> pts;
    std::vector<double> cnt, ysum;
    pts.reserve(agg.size());
    for (const auto& [x, cs] : agg) {
        pts.push_back(x);
        cnt.push_back(cs.first);
        ysum.push_back(cs.second);
    }

    // Normal equations, accumulated in fixed blocks of points so the result
    // does not depend on the thread count.
    const size_t npts = pts.size();
    const size_t block = 256;
    const size_t nblocks = (npts + block - 1) / block;
    std::vector<std::vector<double>> g_part(nblocks), b_part(nblocks);
    const int nt = par::resolve_threads(threads);
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int64_t bi = 0; bi < static_cast<int64_t>(nblocks); ++bi) {
        std::vector<double>& g = g_part[static_cast<size_t>(bi)];
        std::vector<double>& rhs = b_part[static_cast<size_t>(bi)];
        g.assign(p * p, 0.0);
        rhs.assign(p, 0.0);
        std::vector<double> phi(p);
        const size_t lo = static_cast<size_t>(bi) * block;
        const size_t hi = std::min(npts, lo + block);
        for (size_t t = lo; t < hi; ++t) {
            fill_phi(masks, pts[t], phi.data());
            const double w = cnt[t];
            const double ys = ysum[t];
            for (size_t i = 0; i < p; ++i) {
                const double wi = w * phi[i];
                rhs[i] += ys * phi[i];
                double* grow = g.data() + i * p;
                for (size_t j = i; j < p; ++j) grow[j] += wi * phi[j];
            }
        }
    }
    std::vector<double> g(p * p, 0.0), rhs(p, 0.0);
    for (size_t bi = 0; bi < nblocks; ++bi) {
        for (size_t k = 0; k < p * p; ++k) g[k] += g_part[bi][k];
        for (size_t k = 0; k < p; ++k) rhs[k] += b_part[bi][k];
    }
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < i; ++j) g[i * p + j] = g[j * p + i];

    std::vector<double> coef;
    if (!cholesky_solve(g, rhs, p, &coef)) coef = min_norm_solve(g, rhs, p);

    Hypothesis h;
    h.p = Polynomial(n);
    for (size_t j = 0; j < p; ++j)
        if (coef[j] != 0.0) h.p.add_term(Monomial::from_mask(masks[j]), coef[j]);

    // Threshold search over midpoints of distinct predictions plus the two
    // infinite ends; predicted sign is +1 iff p(x) >= t.
    std::vector<double> pred(npts);
    {
        std::vector<double> phi(p);
        for (size_t t = 0; t < npts; ++t) {
            fill_phi(masks, pts[t], phi.data());
            double v = 0.0;
            for (size_t j = 0; j < p; ++j) v += coef[j] * phi[j];
            pred[t] = v;
        }
    }
    struct Group {
        double value;
        double pos;
        double neg;
    };
    std::vector<size_t> order(npts);
    for (size_t i = 0; i < npts; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pred[a] < pred[b]; });
    std::vector<Group> groups;
    for (size_t oi : order) {
        const double pos = (ysum[oi] + cnt[oi]) / 2.0;
        const double neg = cnt[oi] - pos;
        if (!groups.empty() && groups.back().value == pred[oi]) {
            groups.back().pos += pos;
            groups.back().neg += neg;
        } else {
            groups.push_back({pred[oi], pos, neg});
        }
    }
    double total_neg = 0.0;
    for (const Group& grp : groups) total_neg += grp.neg;

    double best_err = total_neg;  // t = -inf: everything predicted +1
    double best_t = -std::numeric_limits<double>::infinity();
    double err = total_neg;
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        err += groups[gi].pos - groups[gi].neg;  // t moved above this group
        const double t = gi + 1 < groups.size()
                             ? 0.5 * (groups[gi].value + groups[gi + 1].value)
                             : std::numeric_limits<double>::infinity();
        if (err < best_err) {
            best_err = err;
            best_t = t;
        }
    }
    h.threshold = best_t;
    return h;
}

double evaluate_error(const Hypothesis& h, const LabeledSample& test) {
    if (test.size() == 0) throw std::invalid_argument("empty test sample");
    const hypercube::CubeEvaluator eval(h.p);
    uint64_t wrong = 0;
    for (size_t i = 0; i < test.size(); ++i) {
        const uint64_t x = test.points[i];
        const int s = eval.sign(&x, h.threshold);
        if (s != test.labels[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(test.size());
}

EvalResult evaluate_exact(const Hypothesis& h, const Ptf& target, double noise_rate, int threads) {
    require_table_size(target.var_count());
    if (noise_rate < 0.0 || noise_rate >= 0.5)
        throw std::invalid_argument("exact evaluation assumes noise rate in [0, 0.5)");
    const hypercube::TruthTable tg = hypercube::truth_table(target, threads);
    const hypercube::TruthTable th =
        hypercube::truth_table(Ptf{h.p, h.threshold}, threads);
    const uint64_t differ = par::count_indexed(tg.size(), threads,
                                               [&](uint64_t i) { return tg.signs[i] != th.signs[i]; });
    const double disagreement = std::ldexp(static_cast<double>(differ), -static_cast<int>(tg.n));
    EvalResult out;
    out.error = noise_rate + (1.0 - 2.0 * noise_rate) * disagreement;
    out.opt = noise_rate;
    out.excess = out.error - out.opt;
    return out;
}

double training_squared_loss(const Polynomial& p, const LabeledSample& sample) {
    const hypercube::CubeEvaluator eval(p);
    double total = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        const uint64_t x = sample.points[i];
        const double r = eval.value(&x) - sample.labels[i];
        total += r * r;
    }
    return total / static_cast<double>(sample.size());
}

}  // namespace ptf::learn
