#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "ptf/polynomial.hpp"
#include "ptf/ptf_io.hpp"
#include "ptf/rng.hpp"

using namespace ptf;

namespace {

Polynomial from_terms(uint32_t n, std::initializer_list<std::pair<std::vector<uint32_t>, double>> terms) {
    Polynomial p(n);
    for (const auto& [idx, c] : terms) p.add_term(Monomial::from_indices(idx), c);
    return p;
}

// Exhaustive cube average of p(x)^2, the independent oracle for norm_sq.
double cube_mean_square(const Polynomial& p) {
    const uint32_t n = p.var_count();
    double total = 0.0;
    std::vector<double> x(n);
    for (uint64_t i = 0; i < (uint64_t{1} << n); ++i) {
        for (uint32_t b = 0; b < n; ++b) x[b] = (i >> b) & 1u ? 1.0 : -1.0;
        const double v = p.evaluate(x);
        total += v * v;
    }
    return total / std::ldexp(1.0, static_cast<int>(n));
}

}  // namespace

TEST_CASE("monomial invariants") {
    CHECK_THROWS_AS(Monomial({{1, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Monomial({{2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Monomial::from_indices({2, 1}), std::invalid_argument);

    const Monomial m = Monomial::from_indices({2, 2, 3});
    CHECK(m.degree() == 3);
    CHECK_FALSE(m.multilinear());
    CHECK(m.min_vars() == 4);

    CHECK(Monomial{}.degree() == 0);
    CHECK(Monomial{}.multilinear());
    CHECK(Monomial::from_mask(0b1010).entries().size() == 2);
    CHECK(Monomial::from_mask(0b1010).mask() == 0b1010);
}

TEST_CASE("evaluate") {
    const Polynomial p1 = from_terms(2, {{{0, 1}, 1.0}});
    CHECK(p1.evaluate(std::vector<double>{1.0, -1.0}) == -1.0);

    const Polynomial zero(3);
    CHECK(zero.evaluate(std::vector<double>{1, 1, 1}) == 0.0);
    CHECK(zero.degree() == 0);

    const Polynomial p2 = from_terms(3, {{{0}, 3.0}, {{0, 1, 2}, 1.0}});
    CHECK(p2.evaluate(std::vector<double>{1, 1, -1}) == 2.0);

    CHECK_THROWS_AS(p2.evaluate(std::vector<double>{1, 1}), std::invalid_argument);

    // Multiplicities evaluate as powers.
    const Polynomial sq = from_terms(1, {{{0, 0}, 1.0}});
    CHECK(sq.evaluate(std::vector<double>{3.0}) == 9.0);
}

TEST_CASE("norm_sq") {
    CHECK(from_terms(2, {{{0}, 1.0}, {{1}, 2.0}}).norm_sq() == 5.0);
    CHECK(from_terms(2, {{{0, 1}, 1.0}}).norm_sq() == 1.0);
    const Polynomial p = from_terms(2, {{{}, 1.0}, {{0}, 1.0}, {{0, 1}, 1.0}});
    CHECK(p.norm_sq() == 3.0);
    CHECK(p.norm_sq() == doctest::Approx(cube_mean_square(p)).epsilon(1e-12));

    CHECK_THROWS_AS(from_terms(1, {{{0, 0}, 1.0}}).norm_sq(), std::invalid_argument);
}

TEST_CASE("restrict") {
    const Polynomial p1 = from_terms(3, {{{0, 1}, 1.0}, {{2}, 1.0}});
    Restriction r1;
    r1.assign(0, -1);
    const Polynomial q1 = p1.restricted(r1);
    CHECK(q1.coefficient(Monomial::from_indices({1})) == -1.0);
    CHECK(q1.coefficient(Monomial::from_indices({2})) == 1.0);
    CHECK(q1.terms().size() == 2);

    // Cancellation produces the zero polynomial.
    const Polynomial p2 = from_terms(2, {{{0}, 1.0}, {{0, 1}, 1.0}});
    Restriction r2;
    r2.assign(1, -1);
    CHECK(p2.restricted(r2).zero());
    CHECK(p2.restricted(r2).degree() == 0);

    const Polynomial p3 = from_terms(3, {{{0, 1}, 1.0}, {{1, 2}, 1.0}, {{0, 2}, 1.0}});
    Restriction r3;
    r3.assign(0, 1);
    r3.assign(1, 1);
    const Polynomial q3 = p3.restricted(r3);
    CHECK(q3.constant_term() == 1.0);
    CHECK(q3.coefficient(Monomial::from_indices({2})) == 2.0);
    // Verify by evaluating both sides on the completions.
    for (double x2 : {1.0, -1.0}) {
        CHECK(q3.evaluate(std::vector<double>{0, 0, x2}) ==
              p3.evaluate(std::vector<double>{1, 1, x2}));
    }

    Restriction bad;
    bad.assign(7, 1);
    CHECK_THROWS_AS(p3.restricted(bad), std::invalid_argument);
    CHECK_THROWS_AS(bad.assign(1, 2), std::invalid_argument);
}

TEST_CASE("restriction consistency on random instances") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        RandomStream rs(99, seed);
        const uint32_t n = 3 + static_cast<uint32_t>(rs.next_u64() % 6);  // 3..8
        const Polynomial p = random_polynomial(n, std::min(3u, n), CoefficientModel::UnitGaussian,
                                               rs.next_u64());
        Restriction r;
        const uint32_t fixed = 1 + static_cast<uint32_t>(rs.next_u64() % n);
        for (uint32_t i = 0; i < fixed; ++i) r.assign(i, rs.next_sign());
        const Polynomial q = p.restricted(r);

        std::vector<double> x(n);
        for (uint64_t rest = 0; rest < (uint64_t{1} << (n - fixed)); ++rest) {
            for (uint32_t i = 0; i < fixed; ++i) x[i] = r.value(i);
            for (uint32_t i = fixed; i < n; ++i) x[i] = (rest >> (i - fixed)) & 1u ? 1.0 : -1.0;
            CHECK(q.evaluate(x) == doctest::Approx(p.evaluate(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("random_polynomial determinism and structure") {
    const Polynomial a = random_polynomial(3, 1, CoefficientModel::SignedUnit, 7);
    const Polynomial b = random_polynomial(3, 1, CoefficientModel::SignedUnit, 7);
    CHECK(a == b);

    const Polynomial g = random_polynomial(5, 2, CoefficientModel::UnitGaussian, 11);
    CHECK(g.degree() == 2);
    CHECK(g.terms().size() == 5 + 10);

    // norm_sq equals the sum of squared sampled coefficients.
    const Polynomial h = random_polynomial(4, 2, CoefficientModel::UnitGaussian, 3);
    double sum = 0.0;
    for (const auto& [mono, c] : h.terms()) sum += c * c;
    CHECK(h.norm_sq() == doctest::Approx(sum).epsilon(1e-15));

    const Polynomial maj = random_polynomial(6, 1, CoefficientModel::MajorityLike, 1);
    CHECK(maj == majority_polynomial(6));

    const Polynomial blocks = random_polynomial(6, 2, CoefficientModel::BlockStructured, 1);
    CHECK(blocks.terms().size() == 3);
    CHECK(blocks.coefficient(Monomial::from_indices({2, 3})) == 0.25);

    CHECK_THROWS_AS(random_polynomial(2, 3, CoefficientModel::UnitGaussian, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(random_polynomial(0, 0, CoefficientModel::UnitGaussian, 1),
                    std::invalid_argument);
}

TEST_CASE("ptf sign convention") {
    // sign(0) = +1: the zero polynomial at theta 0 is constantly +1.
    const Ptf f{Polynomial(3), 0.0};
    std::vector<double> x{1, -1, 1};
    CHECK(f.sign_at(x) == 1);
}

TEST_CASE("serialize and parse round trip") {
    const Polynomial p = from_terms(2, {{{0, 1}, 1.0}, {{}, -0.5}});
    const Ptf f{p, 0.0};
    const std::string text = serialize(f);
    const Ptf g = parse_ptf(text);
    CHECK(g.poly == f.poly);
    CHECK(g.theta == f.theta);

    // 17 significant digits survive the round trip bit-exactly.
    const double ugly = 0.1000000000000000055511151231257827;
    const Ptf h{from_terms(1, {{{0}, ugly}}), ugly};
    const Ptf h2 = parse_ptf(serialize(h));
    CHECK(std::memcmp(&h2.theta, &h.theta, sizeof(double)) == 0);
    const double c2 = h2.poly.coefficient(Monomial::from_indices({0}));
    CHECK(std::memcmp(&c2, &ugly, sizeof(double)) == 0);
}

TEST_CASE("round trip property on random instances") {
    for (uint64_t k = 0; k < 1000; ++k) {
        RandomStream rs(4242, k);
        const uint32_t n = 1 + static_cast<uint32_t>(rs.next_u64() % 10);
        const uint32_t d = std::min(n, 1 + static_cast<uint32_t>(rs.next_u64() % 3));
        const CoefficientModel model = k % 2 ? CoefficientModel::UnitGaussian : CoefficientModel::SignedUnit;
        Ptf f{random_polynomial(n, d, model, rs.next_u64()), rs.next_gaussian()};
        const Ptf g = parse_ptf(serialize(f));
        CHECK(g.poly == f.poly);
        CHECK(g.theta == f.theta);
    }
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_ptf("nope\n"), parse_error);
    CHECK_THROWS_AS(parse_ptf("PTF v1\nn=two theta=0\n"), parse_error);

    // Unsorted indices.
    try {
        parse_ptf("PTF v1\nn=3 theta=0\n1.5 : 2 1\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 3);
    }

    // Index out of range.
    CHECK_THROWS_AS(parse_ptf("PTF v1\nn=2 theta=0\n1 : 5\n"), parse_error);
    // Duplicate monomial.
    CHECK_THROWS_AS(parse_ptf("PTF v1\nn=2 theta=0\n1 : 0\n2 : 0\n"), parse_error);
    // Non-finite coefficient.
    CHECK_THROWS_AS(parse_ptf("PTF v1\nn=2 theta=0\ninf : 0\n"), parse_error);

    // Comments and blank lines are fine; repeated index encodes multiplicity.
    const Ptf ok = parse_ptf("# header comment\nPTF v1\nn=4 theta=0.5\n\n2 : 2 2 3\n");
    CHECK(ok.poly.coefficient(Monomial::from_indices({2, 2, 3})) == 2.0);
    CHECK(ok.theta == 0.5);
}
