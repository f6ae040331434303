#include "doctest.h"

#include "heightforge/core/errors.hpp"
#include "heightforge/group/group.hpp"

#include <random>

using namespace heightforge;

namespace {

GroupElement q(long a, long b = 1) { return GroupElement(RadicalExpr::from_rational(Rational(a, b))); }
GroupElement zeta(long n, long k = 1) { return GroupElement(RadicalExpr::root_of_unity(n, k)); }
GroupElement rad(long base, long num, long den) { return GroupElement(RadicalExpr::power_of(base, Rational(num, den))); }

IntVector ints(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs)
        v.push_back(x);
    return v;
}

AlgebraicNumber real_root(IntPoly f, Rational lo, Rational hi) {
    return AlgebraicNumber(std::move(f), ComplexBox{lo, hi, 0, 0});
}

} // namespace

TEST_CASE("dependence on radical inputs") {
    auto r = find_dependence({q(6), q(2), q(3)});
    REQUIRE(r);
    CHECK(r->exponents == ints({1, -1, -1}));
    CHECK(r->torsion_turn == 0);

    CHECK_FALSE(find_dependence({q(2), q(3)}));

    GroupElement z2(RadicalExpr::root_of_unity(3, 1) * RadicalExpr::from_rational(2));
    r = find_dependence({z2, q(2)});
    REQUIRE(r);
    CHECK(r->exponents == ints({3, -3}));
    CHECK(r->torsion_turn == 0);
    CHECK(verify_relation({z2, q(2)}, *r));

    // A bound too small for the torsion-free multiple keeps the primitive relation.
    r = find_dependence({z2, q(2)}, 2);
    REQUIRE(r);
    CHECK(r->exponents == ints({1, -1}));
    CHECK(r->torsion_order() == 3);
    CHECK(verify_relation({z2, q(2)}, *r));

    r = find_dependence({rad(2, 1, 2), q(2)});
    REQUIRE(r);
    CHECK(r->exponents == ints({2, -1}));
    CHECK_FALSE(find_dependence({q(-4), q(2)}, 1));
}

TEST_CASE("tampered relations fail verification") {
    std::vector<GroupElement> xs{q(6), q(2), q(3)};
    CHECK(verify_relation(xs, Relation{ints({1, -1, -1}), 0}));
    CHECK_FALSE(verify_relation(xs, Relation{ints({1, -1, 0}), 0}));
    CHECK_FALSE(verify_relation(xs, Relation{ints({1, -1, -1}), Rational(1, 2)}));
    CHECK_FALSE(verify_relation(xs, Relation{ints({0, 0, 0}), 0}));
}

TEST_CASE("rank examples") {
    CHECK(rank(GroupBasis({q(2), q(3), q(6)})) == 2);
    CHECK(rank(GroupBasis({zeta(5)})) == 0);
    CHECK(rank(GroupBasis({q(2), rad(2, 1, 2)})) == 1);
    CHECK(rank(GroupBasis({q(2), q(3), q(5), q(7), q(11), q(13)})) == 6);
    CHECK(rank(GroupBasis(std::vector<GroupElement>{})) == 0);
}

TEST_CASE("hull membership") {
    auto c = hull_member(rad(2, 1, 2), GroupBasis({q(2)}));
    REQUIRE(c);
    CHECK(c->n == 2);
    CHECK(c->exponents == std::vector<Rational>{Rational(1, 2)});
    CHECK(verify_hull(rad(2, 1, 2), GroupBasis({q(2)}), *c));

    c = hull_member(q(-2), GroupBasis({q(2)}));
    REQUIRE(c);
    CHECK(c->n == 2);
    CHECK(c->exponents == std::vector<Rational>{Rational(1)});
    CHECK(verify_hull(q(-2), GroupBasis({q(2)}), *c));

    CHECK_FALSE(hull_member(q(3), GroupBasis({q(2)})));

    // 12 = 2^2 * 3 lies in <4, 3> already; 2 only after squaring.
    GroupBasis g({q(4), q(3)});
    c = hull_member(q(12), g);
    REQUIRE(c);
    CHECK(c->n == 1);
    c = hull_member(q(2), g);
    REQUIRE(c);
    CHECK(c->n == 2);
    CHECK(verify_hull(q(2), g, *c));

    HullCertificate bad = *c;
    bad.n = 1;
    CHECK_FALSE(verify_hull(q(2), g, bad));
}

TEST_CASE("saturated bases") {
    auto s = saturate_basis(GroupBasis({q(2), q(3), q(6)}));
    CHECK(s.kept == std::vector<std::size_t>{0, 1});
    REQUIRE(s.dropped.size() == 1);
    CHECK(s.dropped[0].first == 2);
    CHECK(verify_relation({q(2), q(3), q(6)}, s.dropped[0].second));

    s = saturate_basis(GroupBasis({zeta(8), q(5)}));
    CHECK(s.kept == std::vector<std::size_t>{1});
    CHECK(s.basis.generators()[0].to_string() == "5");

    s = saturate_basis(GroupBasis({q(2)}));
    CHECK(s.kept == std::vector<std::size_t>{0});
    CHECK(s.dropped.empty());
}

TEST_CASE("planted relations are recovered") {
    std::mt19937_64 rng(20261015);
    const long private_primes[] = {2, 3, 5, 7, 11, 13};
    std::uniform_int_distribution<long> small(-3, 3), dens(1, 4), sizes(2, 5), orders(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const long k = sizes(rng);
        std::vector<RadicalExpr> xs;
        IntVector planted;
        RadicalExpr last = RadicalExpr::from_rational(1);
        for (long i = 0; i + 1 < k; ++i) {
            // A private prime keeps the first k-1 elements independent.
            long a = small(rng);
            std::map<Integer, Rational> e{{Integer(private_primes[i]), Rational(a == 0 ? 1 : a, dens(rng))}};
            e[Integer(17)] += Rational(small(rng), dens(rng));
            e[Integer(19)] += Rational(small(rng), dens(rng));
            const long m = orders(rng);
            std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
            RadicalExpr x = RadicalExpr::from_parts(Rational(small(rng) + 3, m) - Rational((small(rng) + 3) / m), e);
            xs.push_back(x);
            long c = small(rng);
            planted.push_back(c);
            last = last * x.pow(Rational(c));
        }
        if (std::all_of(planted.begin(), planted.end(), [](const Integer& c) { return c == 0; })) {
            planted[0] = 1;
            last = last * xs[0];
        }
        last = last * RadicalExpr::root_of_unity(orders(rng), 1);
        xs.push_back(last);
        planted.push_back(-1);

        std::vector<GroupElement> elems(xs.begin(), xs.end());
        auto r = find_dependence(elems);
        REQUIRE(r);
        CHECK(verify_relation(elems, *r));
        // The planted kernel is Z * planted, so e must be proportional to it.
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j)
                CHECK(r->exponents[i] * planted[j] == r->exponents[j] * planted[i]);

        GroupBasis g(elems);
        CHECK(rank(g) == static_cast<std::size_t>(k - 1));
        CHECK(rank(saturate_basis(g).basis) == rank(g));
    }
}

TEST_CASE("lattice path on non-radical numbers") {
    // golden ratio and its square
    AlgebraicNumber phi = real_root(IntPoly{-1, -1, 1}, Rational(8, 5), Rational(17, 10));
    AlgebraicNumber phi2 = multiply(phi, phi);
    std::vector<GroupElement> xs{GroupElement(phi), GroupElement(phi2)};
    auto r = find_dependence(xs);
    REQUIRE(r);
    CHECK(r->exponents == ints({2, -1}));
    CHECK(verify_relation(xs, *r));

    // 1 + sqrt2 is a unit: (1 + sqrt2)(sqrt2 - 1) = 1, and (1 + sqrt2)^2 = 3 + 2 sqrt2
    AlgebraicNumber u = real_root(IntPoly{-1, -2, 1}, Rational(2), Rational(3));
    AlgebraicNumber v = real_root(IntPoly{1, -6, 1}, Rational(5), Rational(6));
    r = find_dependence({GroupElement(u), GroupElement(v)});
    REQUIRE(r);
    CHECK(r->exponents == ints({2, -1}));

    // -(1 + sqrt2) carries torsion -1; the relation is scaled to clear it.
    AlgebraicNumber w = real_root(IntPoly{-1, 2, 1}, Rational(-3), Rational(-2));
    r = find_dependence({GroupElement(w), GroupElement(v)});
    REQUIRE(r);
    CHECK(verify_relation({GroupElement(w), GroupElement(v)}, *r));

    CHECK_FALSE(find_dependence({GroupElement(phi), GroupElement(u)}));
    CHECK(rank(GroupBasis({GroupElement(phi), GroupElement(u), GroupElement(v), q(2)})) == 3);

    auto c = hull_member(GroupElement(u), GroupBasis({GroupElement(v)}));
    REQUIRE(c);
    CHECK(c->n == 2);
    CHECK(c->exponents == std::vector<Rational>{Rational(1, 2)});
    CHECK(verify_hull(GroupElement(u), GroupBasis({GroupElement(v)}), *c));
    CHECK_FALSE(hull_member(GroupElement(phi), GroupBasis({GroupElement(v)})));
}
