#include "ptf/hermite.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace ptf::gaussian {

double hermite_univariate(uint32_t k, double x) {
    double prev = 1.0;  // H_0
    if (k == 0) return prev;
    double cur = x;  // H_1
    for (uint32_t j = 1; j < k; ++j) {
        const double next = (x * cur - std::sqrt(static_cast<double>(j)) * prev) /
                            std::sqrt(static_cast<double>(j + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> hermite_univariate_row(uint32_t kmax, double x) {
    std::vector<double> row(kmax + 1);
    row[0] = 1.0;
    if (kmax == 0) return row;
    row[1] = x;
    for (uint32_t j = 1; j < kmax; ++j)
        row[j + 1] = (x * row[j] - std::sqrt(static_cast<double>(j)) * row[j - 1]) /
                     std::sqrt(static_cast<double>(j + 1));
    return row;
}

double hermite_multivariate(const Monomial& s, std::span<const double> x) {
    double prod = 1.0;
    for (const auto& [idx, mult] : s.entries()) {
        if (idx >= x.size()) throw std::invalid_argument("hermite_multivariate: index out of range");
        prod *= hermite_univariate(mult, x[idx]);
    }
    return prod;
}

double HermiteExpansion::norm_sq() const {
    double total = 0.0;
    for (const auto& [s, c] : coeffs) total += c * c;
    return total;
}

double HermiteExpansion::coefficient(const Monomial& s) const {
    auto it = coeffs.find(s);
    return it == coeffs.end() ? 0.0 : it->second;
}

namespace {

// Coefficients of x^m in the orthonormal Hermite basis, computed by repeated
// multiplication with x H_k = sqrt(k+1) H_{k+1} + sqrt(k) H_{k-1}.
std::vector<double> power_in_hermite(uint32_t m) {
    std::vector<double> cur{1.0};
    for (uint32_t step = 0; step < m; ++step) {
        std::vector<double> next(cur.size() + 1, 0.0);
        for (uint32_t k = 0; k < cur.size(); ++k) {
            if (cur[k] == 0.0) continue;
            next[k + 1] += cur[k] * std::sqrt(static_cast<double>(k + 1));
            if (k > 0) next[k - 1] += cur[k] * std::sqrt(static_cast<double>(k));
        }
        cur = std::move(next);
    }
    return cur;
}

// Coefficients of H_k in the power basis.
std::vector<double> hermite_in_power(uint32_t k) {
    std::vector<double> prev{1.0};
    if (k == 0) return prev;
    std::vector<double> cur{0.0, 1.0};
    for (uint32_t j = 1; j < k; ++j) {
        std::vector<double> next(cur.size() + 1, 0.0);
        const double a = 1.0 / std::sqrt(static_cast<double>(j + 1));
        const double b = std::sqrt(static_cast<double>(j)) / std::sqrt(static_cast<double>(j + 1));
        for (uint32_t i = 0; i < cur.size(); ++i) next[i + 1] += a * cur[i];
        for (uint32_t i = 0; i < prev.size(); ++i) next[i] -= b * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

HermiteExpansion hermite_expand(const Polynomial& p) {
    HermiteExpansion out;
    out.n = p.var_count();
    for (const auto& [mono, coeff] : p.terms()) {
        const auto& entries = mono.entries();
        std::vector<std::vector<double>> tables(entries.size());
        for (size_t i = 0; i < entries.size(); ++i) tables[i] = power_in_hermite(entries[i].second);

        // Tensor product over the variables of this term.
        std::vector<Monomial::Entry> chosen;
        std::function<void(size_t, double)> walk = [&](size_t pos, double factor) {
            if (factor == 0.0) return;
            if (pos == entries.size()) {
                auto key = Monomial(std::vector<Monomial::Entry>(chosen));
                auto [it, inserted] = out.coeffs.emplace(key, 0.0);
                it->second += coeff * factor;
                if (it->second == 0.0) out.coeffs.erase(it);
                return;
            }
            const auto& table = tables[pos];
            for (uint32_t k = 0; k < table.size(); ++k) {
                if (table[k] == 0.0) continue;
                if (k > 0) chosen.emplace_back(entries[pos].first, k);
                walk(pos + 1, factor * table[k]);
                if (k > 0) chosen.pop_back();
            }
        };
        walk(0, 1.0);
    }
    return out;
}

Polynomial hermite_to_polynomial(const HermiteExpansion& h) {
    Polynomial out(h.n);
    for (const auto& [s, c] : h.coeffs) {
        const auto& entries = s.entries();
        std::vector<std::vector<double>> tables(entries.size());
        for (size_t i = 0; i < entries.size(); ++i) tables[i] = hermite_in_power(entries[i].second);

        std::vector<Monomial::Entry> chosen;
        std::function<void(size_t, double)> walk = [&](size_t pos, double factor) {
            if (factor == 0.0) return;
            if (pos == entries.size()) {
                out.add_term(Monomial(std::vector<Monomial::Entry>(chosen)), c * factor);
                return;
            }
            const auto& table = tables[pos];
            for (uint32_t k = 0; k < table.size(); ++k) {
                if (table[k] == 0.0) continue;
                if (k > 0) chosen.emplace_back(entries[pos].first, k);
                walk(pos + 1, factor * table[k]);
                if (k > 0) chosen.pop_back();
            }
        };
        walk(0, 1.0);
    }
    return out;
}

double norm_sq_gaussian(const Polynomial& p) { return hermite_expand(p).norm_sq(); }

double hermite_taylor_about(const Monomial& s, std::span<const double> x, std::span<const double> z) {
    const auto& entries = s.entries();
    double total = hermite_multivariate(s, x);

    // Sum over all sub-multisets R with 1 <= |R| <= |S|: the derivative
    // prefactor sqrt(prod s_i!/(s_i-r_i)!) / prod r_i!, the lower Hermite
    // H_{S\R}(x), and the displacement prod (z_i - x_i)^{r_i}.
    std::vector<uint32_t> r(entries.size(), 0);
    std::function<void(size_t)> walk = [&](size_t pos) {
        if (pos == entries.size()) {
            uint64_t any = 0;
            for (uint32_t ri : r) any += ri;
            if (any == 0) return;
            double factor = 1.0;
            std::vector<Monomial::Entry> remaining;
            for (size_t i = 0; i < entries.size(); ++i) {
                const uint32_t si = entries[i].second;
                const uint32_t ri = r[i];
                double fall = 1.0;  // s_i! / (s_i - r_i)!
                for (uint32_t t = 0; t < ri; ++t) fall *= static_cast<double>(si - t);
                double rfact = 1.0;
                for (uint32_t t = 2; t <= ri; ++t) rfact *= static_cast<double>(t);
                factor *= std::sqrt(fall) / rfact;
                const uint32_t idx = entries[i].first;
                factor *= std::pow(z[idx] - x[idx], static_cast<double>(ri));
                if (si - ri > 0) remaining.emplace_back(idx, si - ri);
            }
            total += factor * hermite_multivariate(Monomial(std::move(remaining)), x);
            return;
        }
        for (uint32_t ri = 0; ri <= entries[pos].second; ++ri) {
            r[pos] = ri;
            walk(pos + 1);
        }
        r[pos] = 0;
    };
    walk(0);
    return total;
}

}  // namespace ptf::gaussian
