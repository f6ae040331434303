#include "doctest.h"

#include "heightforge/core/algebraic.hpp"
#include "heightforge/core/factor.hpp"
#include "heightforge/core/radical.hpp"

#include <random>

using namespace heightforge;

namespace {

AlgebraicNumber sqrt_of(long n) { return power(AlgebraicNumber::rational(n), Rational(1, 2)); }

AlgebraicNumber golden() {
    // (1 + sqrt5) / 2 is the root of x^2 - x - 1 near 1.618
    return AlgebraicNumber(IntPoly{-1, -1, 1}, ComplexBox{Rational(3, 2), Rational(2), 0, 0});
}

RadicalExpr random_radical(std::mt19937_64& rng) {
    static const long primes[] = {2, 3, 5, 7};
    std::uniform_int_distribution<long> num(-3, 3), den(1, 3), order(1, 6), pick(0, 3), count(1, 2);
    std::map<Integer, Rational> exps;
    const long n = count(rng);
    for (long i = 0; i < n; ++i) {
        long a = num(rng);
        if (a == 0)
            a = 1;
        exps[Integer(primes[pick(rng)])] += Rational(a, den(rng));
    }
    const long m = order(rng);
    std::uniform_int_distribution<long> ex(0, m - 1);
    return RadicalExpr::from_parts(Rational(ex(rng), m), exps);
}

} // namespace

TEST_CASE("minimal polynomials of radical expressions") {
    CHECK(RadicalExpr::from_rational(2).minimal_polynomial() == IntPoly{-2, 1});
    CHECK(RadicalExpr::power_of(2, Rational(1, 2)).minimal_polynomial() == IntPoly{-2, 0, 1});
    // zeta_3 * 2: x^3 - 8 = (x - 2)(x^2 + 2x + 4); the chosen root is not 2.
    auto z = RadicalExpr::root_of_unity(3, 1) * RadicalExpr::from_rational(2);
    CHECK(z.minimal_polynomial() == IntPoly{4, 2, 1});
    auto fac = factor(IntPoly{-8, 0, 0, 1});
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[1].first == z.minimal_polynomial());
    CHECK(RadicalExpr::root_of_unity(12, 5).minimal_polynomial() == cyclotomic_polynomial(12));
    CHECK(RadicalExpr::from_rational(Rational(-3, 2)).minimal_polynomial() == IntPoly{3, 2});
    CHECK(RadicalExpr::power_of(Rational(1, 2), Rational(1, 3)).minimal_polynomial() == IntPoly{-1, 0, 0, 2});
    // -2^(1/2): x^2 - 2 as well
    CHECK(RadicalExpr::power_of(2, Rational(1, 2)).pow(1) == RadicalExpr::power_of(2, Rational(1, 2)));
    auto neg = RadicalExpr::from_rational(-1) * RadicalExpr::power_of(2, Rational(1, 3));
    CHECK(neg.minimal_polynomial() == IntPoly{2, 0, 0, 1});
}

TEST_CASE("zeta_8 * 2^(1/2) is 1 + i") {
    auto x = RadicalExpr::root_of_unity(8, 1) * RadicalExpr::power_of(2, Rational(1, 2));
    CHECK(x.minimal_polynomial() == IntPoly{2, -2, 1});
}

TEST_CASE("multiply") {
    AlgebraicNumber two = multiply(sqrt_of(2), sqrt_of(2));
    CHECK(two.is_rational());
    CHECK(two.rational_value() == 2);

    AlgebraicNumber s6 = multiply(sqrt_of(2), sqrt_of(3));
    CHECK(s6.minimal_polynomial() == IntPoly{-6, 0, 1});
    CHECK(s6.enclosure(64).re.positive());

    AlgebraicNumber conj(IntPoly{-1, -1, 1}, ComplexBox{Rational(-1), Rational(0), 0, 0});
    AlgebraicNumber m = multiply(golden(), conj);
    CHECK(m.is_rational());
    CHECK(m.rational_value() == -1);
}

TEST_CASE("power and the branch rule") {
    AlgebraicNumber r = power(AlgebraicNumber::rational(2), Rational(1, 2));
    CHECK(r.minimal_polynomial() == IntPoly{-2, 0, 1});
    CHECK(r.enclosure(64).re.positive());
    CHECK(r.is_real());

    AlgebraicNumber four = power(AlgebraicNumber::rational(4), Rational(1, 2));
    CHECK(four.is_rational());
    CHECK(four.rational_value() == 2);

    AlgebraicNumber eight = power(AlgebraicNumber::rational(2), Rational(3));
    CHECK(eight.rational_value() == 8);

    // (-8)^(1/3) = 2 * zeta_6 on the principal branch, not -2
    AlgebraicNumber c = power(AlgebraicNumber::rational(-8), Rational(1, 3));
    CHECK(c.minimal_polynomial() == IntPoly{4, -2, 1});
    CHECK(c.enclosure(64).im.positive());
    // (-1)^(1/2) = i
    AlgebraicNumber i = power(AlgebraicNumber::rational(-1), Rational(1, 2));
    CHECK(i.minimal_polynomial() == IntPoly{1, 0, 1});
    CHECK(i.enclosure(64).im.positive());
}

TEST_CASE("roots of unity") {
    CHECK(is_root_of_unity(AlgebraicNumber::root_of_unity(7, 1)) == 7);
    CHECK(is_root_of_unity(AlgebraicNumber::rational(-1)) == 2);
    CHECK(is_root_of_unity(AlgebraicNumber::rational(1)) == 1);
    CHECK(!is_root_of_unity(golden()));
    CHECK(!is_root_of_unity(AlgebraicNumber::rational(2)));
    for (long n = 1; n <= 30; ++n)
        for (long a = 0; a < n; ++a)
            if (std::gcd(a, n) == 1)
                CHECK(is_root_of_unity(AlgebraicNumber::root_of_unity(n, a)) == n);
    // (1 + i) / sqrt(2) has modulus one but also i * sqrt(2)/2 ... it is zeta_8
    auto z8 = RadicalExpr::root_of_unity(8, 3).to_algebraic();
    CHECK(is_root_of_unity(z8) == 8);
    // (3 + 4i) / 5 has modulus one and is not torsion
    AlgebraicNumber p(IntPoly{5, -6, 5}, ComplexBox{Rational(1, 2), Rational(7, 10), Rational(7, 10), Rational(9, 10)});
    CHECK(!is_root_of_unity(p));
}

TEST_CASE("complex embeddings") {
    AlgebraicNumber s2 = sqrt_of(2);
    auto boxes = complex_embeddings(s2, 1e-8);
    REQUIRE(boxes.size() == 2);
    for (const auto& b : boxes) {
        CHECK(b.width() <= Rational(1, 100000000));
        CHECK(b.im_lo == 0);
        // the box brackets +-sqrt(2)
        CHECK((b.re_lo * b.re_lo - 2) * (b.re_hi * b.re_hi - 2) <= 0);
    }
    CHECK(boxes[0].re_hi < 0);
    CHECK(boxes[1].re_lo > 0);

    auto three = complex_embeddings(AlgebraicNumber::rational(3), 1e-12);
    REQUIRE(three.size() == 1);
    CHECK(three[0].re_lo == 3);
    CHECK(three[0].re_hi == 3);

    auto c5 = complex_embeddings(AlgebraicNumber::root_of_unity(5, 1), 1e-9);
    REQUIRE(c5.size() == 4);
    for (const auto& b : c5) {
        CHECK(b.width() <= Rational(1, 1000000000));
        auto m = abs(b.to_interval(128));
        CHECK(m.contains(Rational(1)));
    }
    for (std::size_t i = 0; i < c5.size(); ++i)
        for (std::size_t j = i + 1; j < c5.size(); ++j)
            CHECK(!c5[i].to_interval(128).intersects(c5[j].to_interval(128)));
}

TEST_CASE("equality") {
    CHECK(equal(sqrt_of(2), power(AlgebraicNumber::rational(2), Rational(1, 2))));
    AlgebraicNumber neg(IntPoly{-2, 0, 1}, ComplexBox{Rational(-2), Rational(-1), 0, 0});
    CHECK(!equal(sqrt_of(2), neg));
    CHECK(!equal(sqrt_of(2), sqrt_of(3)));
}

TEST_CASE("power round trip: b^t = a^s exactly") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> sd(-6, 6), td(1, 6);
    for (int trial = 0; trial < 25; ++trial) {
        RadicalExpr x = random_radical(rng);
        long s = sd(rng);
        if (s == 0)
            s = 1;
        const long t = td(rng);
        AlgebraicNumber a = x.to_algebraic();
        AlgebraicNumber b = power(a, Rational(s, t));
        CHECK(equal(power(b, Rational(t)), power(a, Rational(s))));
        // Both branch rules coincide.
        CHECK(equal(b, x.pow(Rational(s, t)).to_algebraic()));
        CHECK(b.minimal_polynomial() == x.pow(Rational(s, t)).minimal_polynomial());
        CHECK(is_irreducible(b.minimal_polynomial()));
    }
}

TEST_CASE("multiplication is commutative and associative") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        RadicalExpr x = random_radical(rng), y = random_radical(rng), z = random_radical(rng);
        AlgebraicNumber a = x.to_algebraic(), b = y.to_algebraic(), c = z.to_algebraic();
        CHECK(equal(multiply(a, b), multiply(b, a)));
        CHECK(equal(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
        CHECK(equal(multiply(a, b), (x * y).to_algebraic()));
    }
}
