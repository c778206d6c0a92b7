#include "ptf/restrictions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ptf/parallel.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"
#include "ptf/weights.hpp"

namespace ptf::structure {

const char* to_string(Determinacy d) {
    switch (d) {
        case Determinacy::Determining: return "determining";
        case Determinacy::NotDetermining: return "not-determining";
        case Determinacy::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Renumbers the variables actually appearing in p to 0..m-1.
Polynomial compact_support(const Polynomial& p, uint32_t* support_size) {
    std::map<uint32_t, uint32_t> remap;
    for (const auto& [mono, coeff] : p.terms())
        for (const auto& [idx, mult] : mono.entries()) remap.emplace(idx, 0);
    uint32_t next = 0;
    for (auto& [idx, compact] : remap) compact = next++;
    *support_size = next;
    Polynomial out(next);
    for (const auto& [mono, coeff] : p.terms()) {
        std::vector<Monomial::Entry> entries;
        for (const auto& [idx, mult] : mono.entries()) entries.emplace_back(remap[idx], mult);
        out.add_term(Monomial(std::move(entries)), coeff);
    }
    return out;
}

}  // namespace

DeterminingResult determining_test(const Ptf& f, const Restriction& r, double eps,
                                   uint64_t samples, uint64_t seed, int threads) {
    if (eps < 0.0) throw std::invalid_argument("eps must be non-negative");
    const Polynomial restricted = f.poly.restricted(r);

    DeterminingResult out;
    uint32_t support = 0;
    const Polynomial compact = compact_support(restricted, &support);

    if (support == 0) {
        // Restriction forced the polynomial to a constant.
        out.outcome = Determinacy::Determining;
        out.majority_sign = sign_pm(compact.constant_term() - f.theta);
        out.bias = Estimate{0.0, 0.0, 1.0, 1, seed};
        out.exact = true;
        return out;
    }

    if (static_cast<int>(support) <= exact_limit() && support <= 26) {
        const std::vector<double> values = hypercube::value_table(compact, threads);
        const double theta = f.theta;
        const uint64_t plus = par::count_indexed(values.size(), threads,
                                                 [&](uint64_t i) { return sign_pm(values[i] - theta) > 0; });
        const double p_plus = std::ldexp(static_cast<double>(plus), -static_cast<int>(support));
        out.majority_sign = p_plus >= 0.5 ? 1 : -1;
        const double bias = std::min(p_plus, 1.0 - p_plus);
        out.bias = Estimate{bias, 0.0, 1.0, values.size(), seed};
        out.exact = true;
        out.outcome = bias <= eps ? Determinacy::Determining : Determinacy::NotDetermining;
        return out;
    }

    if (samples < 1) throw std::invalid_argument("Monte Carlo determining test needs samples >= 1");
    const hypercube::CubeEvaluator eval(compact);
    const uint32_t words = (support + 63) / 64;
    const double theta = f.theta;
    const uint64_t plus = par::count_indexed(samples, threads, [&](uint64_t i) {
        RandomStream rs(seed, i);
        std::vector<uint64_t> x(words, 0);
        for (uint32_t w = 0; w < words; ++w) x[w] = rs.next_u64();
        const uint32_t rem = support % 64;
        if (rem != 0) x[words - 1] &= (uint64_t{1} << rem) - 1;
        return eval.sign(x.data(), theta) > 0;
    });
    const double p_plus = static_cast<double>(plus) / static_cast<double>(samples);
    out.majority_sign = p_plus >= 0.5 ? 1 : -1;
    const double bias = std::min(p_plus, 1.0 - p_plus);
    const double hw = hoeffding_half_width(samples, 0.99);
    out.bias = Estimate{bias, hw, 0.99, samples, seed};
    out.exact = false;
    if (bias + hw <= eps)
        out.outcome = Determinacy::Determining;
    else if (bias - hw > eps)
        out.outcome = Determinacy::NotDetermining;
    else
        out.outcome = Determinacy::Inconclusive;
    return out;
}

uint32_t determining_block_length(double eps, double c_d) {
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("determining block length requires eps in (0, 1)");
    return static_cast<uint32_t>(std::ceil(c_d * std::log(1.0 / eps) / (eps * eps)));
}

Estimate restriction_experiment(const Ptf& f, double eps, RestrictionMode mode, uint64_t trials,
                                uint64_t seed, const ExperimentConfig& cfg, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const WeightProfile wp = weight_profile(f.poly);
    const uint32_t k = critical_index(wp, eps);

    uint32_t block = 0;
    double target_eps = 0.0;
    if (mode == RestrictionMode::Regularity) {
        block = k;
        target_eps = cfg.a_d * eps;
    } else {
        const uint32_t l = determining_block_length(eps, cfg.c_d);
        if (k < l)
            throw std::invalid_argument("determining mode requires critical index >= L = " + std::to_string(l));
        block = l;
        target_eps = cfg.b_d * eps;
    }

    const std::vector<uint32_t> vars(wp.perm.begin(), wp.perm.begin() + block);
    const uint64_t hits = par::count_indexed(trials, threads, [&](uint64_t t) {
        RandomStream rs(seed, t);
        Restriction r;
        for (uint32_t v : vars) r.assign(v, rs.next_sign());
        const Polynomial q = f.poly.restricted(r);
        if (mode == RestrictionMode::Regularity) {
            // A restriction with no remaining variable weight is vacuously
            // regular: its PTF is a constant.
            bool variable_free = true;
            for (const auto& [mono, coeff] : q.terms())
                if (!mono.constant()) {
                    variable_free = false;
                    break;
                }
            if (variable_free) return true;
            return is_regular(q, target_eps);
        }
        const DeterminingResult dr =
            determining_test(f, r, target_eps, cfg.inner_samples, derive_seed(seed, t), 1);
        return dr.outcome == Determinacy::Determining;
    });

    Estimate e;
    e.value = static_cast<double>(hits) / static_cast<double>(trials);
    e.half_width = hoeffding_half_width(trials, cfg.confidence);
    e.confidence = cfg.confidence;
    e.samples = trials;
    e.seed = seed;
    return e;
}

}  // namespace ptf::structure
