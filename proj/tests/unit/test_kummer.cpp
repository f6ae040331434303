#include "doctest.h"

#include "heightforge/core/errors.hpp"
#include "heightforge/kummer/tower.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace heightforge;

namespace {

using cd = std::complex<double>;

// Numeric value of a tower element, from its coordinates and real radicals.
cd numeric(const RadicalTower& t, const TowerElement& x) {
    cd acc = 0;
    for (std::size_t u = 0; u < x.coords.size(); ++u) {
        double m = 1;
        for (std::size_t i = 0; i < t.rank(); ++i)
            m *= std::pow(t.radicands()[i].get_d(), static_cast<double>(t.basis_monomials()[u][i]) / t.orders()[i]);
        acc += t.base().evaluate(x.coords[u]) * m;
    }
    return acc;
}

CycElem random_base(const CyclotomicField& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    CycElem e = F.zero();
    for (auto& c : e.c) {
        c = Rational(num(rng), den(rng));
        c.canonicalize();
    }
    if (F.is_zero(e))
        e = F.one();
    return e;
}

TowerElement random_element(const RadicalTower& t, std::mt19937_64& rng) {
    TowerElement x = t.zero();
    for (auto& c : x.coords)
        c = random_base(t.base(), rng);
    return x;
}

RadicalTower standard() { return RadicalTower::build(12, {2, 3}, {3, 4}); }

} // namespace

TEST_CASE("cyclotomic arithmetic") {
    CyclotomicField F(12);
    CHECK(F.degree() == 4);
    CHECK(F.pow(F.zeta_power(1), 12) == F.one());
    CHECK(F.pow(F.zeta_power(1), 6) == F.from_rational(-1));
    CHECK(F.to_string(F.add(F.one(), F.zeta_power(1))) == "1 + zeta(12)");
    CHECK(F.to_string(F.zeta_power(5)) == "-zeta(12) + zeta(12)^3");

    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        CycElem a = random_base(F, rng);
        CHECK(F.mul(a, F.inverse(a)) == F.one());
        const cd z = std::polar(1.0, 2 * M_PI / 12);
        cd expect = 0;
        for (std::size_t k = 0; k < 4; ++k)
            expect += a.c[k].get_d() * std::pow(z, static_cast<double>(k));
        CHECK(std::abs(F.evaluate(a) - expect) < 1e-12);
    }

    // odd conductor still holds -1 and the 2M-th roots
    CyclotomicField F3(3);
    CHECK(F3.root_of_unity(2, 1) == F3.from_rational(-1));
    CHECK(std::abs(F3.evaluate(F3.root_of_unity(6, 1)) - std::polar(1.0, M_PI / 3)) < 1e-12);
    CHECK_THROWS_AS(F3.root_of_unity(4, 1), InvalidInput);
}

TEST_CASE("square roots in cyclotomic fields") {
    struct Case {
        long M, d;
        bool present;
    };
    for (auto [M, d, present] : std::vector<Case>{
             {12, 3, true}, {5, 5, true}, {8, 2, true}, {4, 2, false}, {3, 3, false}, {21, 21, true},
             {24, 6, true}, {20, 5, true}, {28, 7, true}, {7, 7, false}, {120, 30, true}, {15, 15, false}}) {
        CyclotomicField F(M);
        auto s = F.sqrt_positive(d);
        CHECK(s.has_value() == present);
        if (s) {
            CHECK(F.mul(*s, *s) == F.from_rational(d));
            CHECK(std::abs(F.evaluate(*s) - std::sqrt(static_cast<double>(d))) < 1e-9);
        }
    }
}

TEST_CASE("tower construction") {
    RadicalTower t = standard();
    CHECK(t.exponent_group_order() == 12);
    // sqrt 3 = 3^(2/4) lies in Q(zeta_12), so the degree over the base is 6
    CHECK(t.degree() == 6);
    CHECK(t.absorbed() == std::vector<std::vector<long>>{{0, 2}});
    TowerElement s3 = t.monomial({0, 2});
    CHECK(t.in_base(s3));
    CHECK(std::abs(numeric(t, s3) - std::sqrt(3.0)) < 1e-12);

    RadicalTower q5 = RadicalTower::build(2, {5}, {2});
    CHECK(q5.degree() == 2);
    CHECK(q5.absorbed().empty());

    try {
        RadicalTower::build(4, {2, 8}, {2, 2});
        FAIL("expected an entangled tower");
    } catch (const Entangled& e) {
        CHECK(e.monomial() == std::vector<long>{1, 1});
        CHECK(e.relation() == "8 = 2^3");
    }
    // planted entanglement: gamma_3 = gamma_1^x * gamma_2^y, so gamma_1^(-x/m) gamma_2^(-y/m) gamma_3^(1/m) is rational
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> ex(-3, 3), pick(0, 3);
    const Rational bases[] = {2, 3, Rational(5, 2), 7};
    for (int i = 0; i < 10; ++i) {
        const long m = i % 2 ? 2 : 3;
        Rational g1 = bases[pick(rng)], g2 = bases[pick(rng)];
        if (g1 == g2)
            g2 = 11;
        long x = ex(rng), y = ex(rng);
        if (x == 0 && y == 0)
            x = 1;
        Rational g3 = 1;
        for (long k = 0; k < std::abs(x); ++k)
            g3 *= x > 0 ? g1 : 1 / g1;
        for (long k = 0; k < std::abs(y); ++k)
            g3 *= y > 0 ? g2 : 1 / g2;
        CHECK_THROWS_AS(RadicalTower::build(6, {g1, g2, g3}, {m, m, m}), Entangled);
    }
    // 12^(1/2) = 2 sqrt 3 is not in Q(zeta_6): no entanglement there
    CHECK(RadicalTower::build(6, {2, 3, 12}, {2, 3, 2}).degree() == 12);
    CHECK_THROWS_AS(RadicalTower::build(4, {4}, {2}), Entangled);
    CHECK_THROWS_AS(RadicalTower::build(4, {2}, {3}), InvalidInput);
    // 2 and 4 are dependent but no monomial of Q(2^(1/2), 4^(1/3)) is rational
    CHECK(RadicalTower::build(6, {2, 4}, {2, 3}).degree() == 6);
}

TEST_CASE("tower arithmetic matches numerics") {
    RadicalTower t = standard();
    std::mt19937_64 rng(2);
    for (int i = 0; i < 15; ++i) {
        TowerElement a = random_element(t, rng), b = random_element(t, rng);
        CHECK(std::abs(numeric(t, t.mul(a, b)) - numeric(t, a) * numeric(t, b)) < 1e-8 * std::abs(numeric(t, a) * numeric(t, b)) + 1e-9);
        TowerElement ai = t.inverse(a);
        CHECK(t.equal(t.mul(a, ai), t.one()));
    }
    // 2^(1/3) cubed is 2; 3^(1/4)^4 is 3
    CHECK(t.equal(t.pow(t.monomial({1, 0}), 3), t.from_base(t.base().from_rational(2))));
    CHECK(t.equal(t.pow(t.monomial({0, 1}), 4), t.from_base(t.base().from_rational(3))));
}

TEST_CASE("galois action") {
    RadicalTower t = standard();
    const CyclotomicField& F = t.base();
    GaloisAutomorphism sigma{{1, 0}};
    TowerElement x = t.monomial({2, 0});
    TowerElement expect = t.mul(t.from_base(F.root_of_unity(3, 2)), x);
    CHECK(t.equal(galois_action(t, sigma, x), expect));

    std::mt19937_64 rng(3);
    TowerElement y = random_element(t, rng);
    CHECK(t.equal(galois_action(t, GaloisAutomorphism{{0, 0}}, y), y));

    // sqrt 3 is in the base, so 3^(1/4) -> i 3^(1/4) is not an automorphism
    CHECK_FALSE(t.is_valid(GaloisAutomorphism{{0, 1}}));
    CHECK(t.is_valid(GaloisAutomorphism{{0, 2}}));
    auto group = t.galois_group();
    CHECK(group.size() == t.degree());

    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
        const auto& s = group[pick(rng)];
        const auto& u = group[pick(rng)];
        TowerElement a = random_element(t, rng), b = random_element(t, rng);
        CHECK(t.equal(galois_action(t, s, galois_action(t, u, a)), galois_action(t, compose(t, s, u), a)));
        CHECK(t.equal(galois_action(t, s, t.mul(a, b)), t.mul(galois_action(t, s, a), galois_action(t, s, b))));
        CHECK(t.equal(galois_action(t, s, t.add(a, b)), t.add(galois_action(t, s, a), galois_action(t, s, b))));
    }
    // the fixed field of the whole group is the base
    TowerElement z = random_element(t, rng);
    TowerElement trace = t.zero();
    for (const auto& s : group)
        trace = t.add(trace, galois_action(t, s, z));
    CHECK(t.in_base(trace));
    bool moved = false;
    for (const auto& s : group)
        moved = moved || !t.equal(galois_action(t, s, z), z);
    CHECK(moved);
}

TEST_CASE("descent examples") {
    RadicalTower t = standard();
    const CyclotomicField& F = t.base();
    const CycElem one_plus = F.add(F.one(), F.zeta_power(1));
    TowerElement alpha = t.mul(t.from_base(one_plus), t.monomial({2, 1}));
    Descent d = descend(alpha, t);
    CHECK(d.exponents == std::vector<Rational>{Rational(2, 3), Rational(1, 4)});
    CHECK(d.beta == one_plus);

    d = descend(t.from_base(F.from_rational(Rational(7, 3))), t);
    CHECK(d.exponents == std::vector<Rational>{0, 0});
    CHECK(d.beta == F.from_rational(Rational(7, 3)));

    CHECK_THROWS_AS(descend(t.add(t.monomial({1, 0}), t.monomial({0, 1})), t), NotTorsion);
    CHECK_THROWS_AS(descend(t.add(t.monomial({1, 0}), t.monomial({0, 1})), t, 12), NotTorsion);
    CHECK_THROWS_AS(descend(t.zero(), t), InvalidInput);

    GroupBasis gamma({GroupElement(RadicalExpr::from_rational(2)), GroupElement(RadicalExpr::from_rational(3))});
    auto w = torsion_free_witness(t.monomial({1, 0}), t, gamma);
    CHECK(w.verified);
    CHECK(w.descent.exponents == std::vector<Rational>{Rational(1, 3), 0});
    CHECK(w.descent.beta == F.one());

    w = torsion_free_witness(t.mul(t.from_base(F.zeta_power(1)), t.monomial({0, 3})), t, gamma);
    CHECK(w.verified);
    // 3^(3/4) = sqrt 3 * 3^(1/4): the representative monomial is 3^(1/4)
    CHECK(w.descent.exponents == std::vector<Rational>{0, Rational(1, 4)});
    CHECK(w.descent.beta == F.mul(F.zeta_power(1), *F.sqrt_positive(3)));

    CHECK_THROWS_AS(torsion_free_witness(t.add(t.monomial({1, 0}), t.one()), t, gamma), NotTorsion);
    CHECK_THROWS_AS(torsion_free_witness(t.one(), t, GroupBasis({GroupElement(RadicalExpr::from_rational(2))})),
                    InvalidInput);
}

TEST_CASE("descent round trip") {
    RadicalTower t = standard();
    const CyclotomicField& F = t.base();
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> j1(-5, 5), j2(-7, 7);
    for (int i = 0; i < 25; ++i) {
        CycElem beta = random_base(F, rng);
        std::vector<long> j{j1(rng), j2(rng)};
        TowerElement alpha = t.mul(t.from_base(beta), t.monomial(j));
        Descent d = descend(alpha, t);
        // e agrees with j/m modulo 1, up to the absorbed sqrt 3
        CHECK(d.exponents[0] == ratio(((j[0] % 3) + 3) % 3, 3));
        CHECK(d.exponents[1] == ratio(((j[1] % 2) + 2) % 2, 4));
        // beta * prod gamma^e reproduces alpha exactly
        std::vector<long> jj{d.exponents[0].get_num().get_si() * 3 / d.exponents[0].get_den().get_si(),
                             d.exponents[1].get_num().get_si() * 4 / d.exponents[1].get_den().get_si()};
        CHECK(t.equal(t.mul(t.from_base(d.beta), t.monomial(jj)), alpha));
        CHECK(std::abs(numeric(t, alpha) - F.evaluate(d.beta) * std::pow(2.0, d.exponents[0].get_d()) *
                                              std::pow(3.0, d.exponents[1].get_d())) < 1e-8 * std::abs(numeric(t, alpha)));
    }
    for (int i = 0; i < 10; ++i) {
        TowerElement two = t.add(t.mul(t.from_base(random_base(F, rng)), t.monomial({1, 0})),
                                 t.mul(t.from_base(random_base(F, rng)), t.monomial({0, 1})));
        CHECK_THROWS_AS(descend(two, t), NotTorsion);
    }
}

TEST_CASE("radical inputs agree with hull membership") {
    RadicalTower t = standard();
    GroupBasis gamma({GroupElement(RadicalExpr::from_rational(2)), GroupElement(RadicalExpr::from_rational(3))});
    std::vector<RadicalExpr> xs{RadicalExpr::power_of(2, Rational(1, 3)), RadicalExpr::power_of(3, Rational(-5, 4)),
                                RadicalExpr::power_of(2, Rational(2, 3)) * RadicalExpr::power_of(3, Rational(3, 4)) * RadicalExpr::root_of_unity(12, 5),
                                RadicalExpr::power_of(Rational(4, 9), Rational(1, 2))};
    for (const auto& x : xs) {
        TowerElement a = t.from_radical(x);
        ComplexInterval e = x.enclosure(64);
        CHECK(std::abs(numeric(t, a) - cd(e.re.mid_double(), e.im.mid_double())) < 1e-9);
        CHECK_NOTHROW(descend(a, t));
        CHECK(hull_member(GroupElement(x), gamma).has_value());
    }
    CHECK_THROWS_AS(t.from_radical(RadicalExpr::power_of(5, Rational(1, 2))), UnsupportedExpression);
    CHECK_THROWS_AS(t.from_radical(RadicalExpr::power_of(2, Rational(1, 6))), UnsupportedExpression);
}
