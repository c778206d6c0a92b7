#include "ptf/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ptf::structure {

WeightProfile weight_profile(const Polynomial& p) {
    if (!p.multilinear()) throw std::invalid_argument("weight profile requires a multilinear polynomial");
    const uint32_t n = p.var_count();
    WeightProfile wp;
    wp.w_sq.assign(n, 0.0);
    for (const auto& [mono, coeff] : p.terms())
        for (const auto& [idx, mult] : mono.entries()) wp.w_sq[idx] += coeff * coeff;

    wp.perm.resize(n);
    std::iota(wp.perm.begin(), wp.perm.end(), 0u);
    std::stable_sort(wp.perm.begin(), wp.perm.end(),
                     [&](uint32_t a, uint32_t b) { return wp.w_sq[a] > wp.w_sq[b]; });

    wp.sorted_w_sq.resize(n);
    for (uint32_t k = 0; k < n; ++k) wp.sorted_w_sq[k] = wp.w_sq[wp.perm[k]];

    wp.tail_sq.assign(n + 1, 0.0);
    for (uint32_t k = n; k-- > 0;) wp.tail_sq[k] = wp.tail_sq[k + 1] + wp.sorted_w_sq[k];

    const double sigma1_sq = wp.tail_sq.empty() ? 0.0 : wp.tail_sq[0];
    if (sigma1_sq <= 0.0)
        throw std::invalid_argument("weight profile undefined: polynomial has no variable-dependent terms");

    double w4 = 0.0;
    for (double w : wp.w_sq) w4 += w * w;
    wp.regular_stat = w4 / (sigma1_sq * sigma1_sq);
    return wp;
}

bool is_regular(const WeightProfile& wp, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    return wp.regular_stat <= eps * eps;
}

bool is_regular(const Polynomial& p, double eps) { return is_regular(weight_profile(p), eps); }

uint32_t critical_index(const WeightProfile& wp, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const uint32_t n = static_cast<uint32_t>(wp.sorted_w_sq.size());
    // Weights are sorted decreasing, so "every later weight" reduces to the
    // first weight after position i.
    for (uint32_t i = 0; i < n; ++i)
        if (wp.sorted_w_sq[i] <= eps * eps * wp.tail_sq[i]) return i;
    return n;
}

uint32_t critical_index(const Polynomial& p, double eps) {
    return critical_index(weight_profile(p), eps);
}

bool sigma_decay_check(const Polynomial& p, double eps) {
    const WeightProfile wp = weight_profile(p);
    const uint32_t k = critical_index(wp, eps);
    const double decay = 1.0 - eps * eps;
    // 1-based sigma_i^2 is tail_sq[i-1].
    for (uint32_t i = 1; i < k; ++i) {
        for (uint32_t j = i + 1; j < k; ++j) {
            const double bound = std::pow(decay, static_cast<double>(j - i)) * wp.tail_sq[i - 1];
            if (wp.tail_sq[j - 1] > bound * (1.0 + 1e-9)) return false;
        }
    }
    return true;
}

}  // namespace ptf::structure
