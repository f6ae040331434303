#include "doctest.h"

#include "heightforge/height/height.hpp"

#include <cmath>
#include <random>

using namespace heightforge;

namespace {

RadicalExpr random_radical(std::mt19937_64& rng, long max_den = 3) {
    static const long primes[] = {2, 3, 5, 7, 11};
    std::uniform_int_distribution<long> num(-4, 4), den(1, max_den), order(1, 6), pick(0, 4), count(1, 3);
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

// Independent numeric oracle for h(x) of a radical: mpfr-free double evaluation.
double radical_height_double(const RadicalExpr& x) {
    double pos = 0, neg = 0;
    for (const auto& [p, e] : x.exponents())
        (e > 0 ? pos : neg) += std::fabs(e.get_d()) * std::log(p.get_d());
    return std::max(pos, neg);
}

const Rational tol_q(1, 1000000000000L);

} // namespace

TEST_CASE("certified interval rendering") {
    CertifiedInterval x = log_combination({{Integer(2), Rational(1)}}, 1e-12);
    CHECK(decimal_lower(x, 1e-12) == "0.6931471805599452");
    CHECK(decimal_upper(x, 1e-12) == "0.6931471805599454");
    CHECK(decimal_round(Rational(-1, 3), 4, false) == "-0.3334");
    CHECK(decimal_round(Rational(-1, 3), 4, true) == "-0.3333");
    CHECK(decimal_round(Rational(5), 2, true) == "5.00");
    CHECK(decimal_lower(CertifiedInterval::exact(0), 1e-12) == "0.0000000000000000");
    CertifiedInterval tight = log_combination({{Integer(2), Rational(1)}}, 1e-20);
    CHECK(decimal_lower(tight, 1e-20) == "0.693147180559945309417043");
    CHECK(decimal_upper(tight, 1e-20) == "0.693147180559945309417256");
}

TEST_CASE("three-valued comparisons") {
    CertifiedInterval x{Rational(1), Rational(2)};
    CHECK(less_than(x, 3) == Truth::yes);
    CHECK(less_than(x, 1) == Truth::no);
    CHECK(less_than(x, Rational(3, 2)) == Truth::undecided);
    CHECK(greater_or_equal(x, 1) == Truth::yes);
}

TEST_CASE("weil height unit values") {
    CertifiedInterval h2 = weil_height(AlgebraicNumber::rational(2));
    CHECK(h2.width() <= tol_q);
    CHECK(h2.mid_double() == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    AlgebraicNumber golden(IntPoly{-1, -1, 1}, ComplexBox{Rational(3, 2), Rational(2), 0, 0});
    CertifiedInterval hg = weil_height(golden);
    const double schinzel = 0.5 * std::log((1 + std::sqrt(5.0)) / 2);
    CHECK(hg.width() <= tol_q);
    CHECK(hg.mid_double() == doctest::Approx(schinzel).epsilon(1e-13));
    CHECK(hg.mid_double() == doctest::Approx(0.240606).epsilon(1e-6));

    CertifiedInterval hz = weil_height(AlgebraicNumber::root_of_unity(5, 1));
    CHECK(hz.lo == 0);
    CHECK(hz.hi == 0);
    // Without the shortcut the interval still contains 0 and is tiny.
    CertifiedInterval hz2 = weil_height(AlgebraicNumber::root_of_unity(5, 1), {1e-12, false});
    CHECK(hz2.lo == 0);
    CHECK(hz2.hi <= tol_q);
    CHECK(weil_height(AlgebraicNumber::rational(Rational(2, 3))).mid_double() == doctest::Approx(std::log(3.0)));
}

TEST_CASE("sunit height examples") {
    auto h6 = sunit_height(RadicalExpr::from_rational(6));
    CHECK(h6.symbolic() == "log(2) + log(3)");
    CHECK(h6.value.mid_double() == doctest::Approx(std::log(6.0)));
    auto h23 = sunit_height(RadicalExpr::from_rational(Rational(2, 3)));
    CHECK(h23.symbolic() == "log(3)");
    auto x = RadicalExpr::from_rational(3) * RadicalExpr::power_of(2, Rational(-1, 2));
    auto hx = sunit_height(x);
    CHECK(hx.symbolic() == "log(3)");
    // Oracle: square it to 9/2, take the rational height and halve.
    CertifiedInterval sq = weil_height(AlgebraicNumber::rational(Rational(9, 2)));
    CHECK(hx.value.overlaps(Rational(1, 2) * sq, tol_q));
    CHECK(sunit_height(RadicalExpr::root_of_unity(7, 3)).symbolic() == "0");
}

TEST_CASE("sunit height agrees with weil height on random radicals") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        RadicalExpr x = random_radical(rng);
        auto s = sunit_height(x);
        CHECK(s.value.mid_double() == doctest::Approx(radical_height_double(x)).epsilon(1e-12));
        CertifiedInterval w = weil_height(x.to_algebraic());
        CHECK_MESSAGE(s.value.overlaps(w), x.to_string());
    }
}

TEST_CASE("scaling and homogeneity") {
    std::mt19937_64 rng(202);
    const Rational slack(1, 1000000000);
    for (int trial = 0; trial < 30; ++trial) {
        RadicalExpr x = random_radical(rng);
        auto h = sunit_height(x).value;
        for (long n = 2; n <= 10; ++n) {
            auto root = sunit_height(x.pow(Rational(1, n))).value;
            CHECK(root.overlaps(Rational(1, n) * h, slack));
            auto pw = sunit_height(x.pow(Rational(n))).value;
            CHECK(pw.overlaps(Rational(n) * h, slack));
        }
    }
}

TEST_CASE("scaling law on the general path") {
    AlgebraicNumber golden(IntPoly{-1, -1, 1}, ComplexBox{Rational(3, 2), Rational(2), 0, 0});
    auto h = weil_height(golden);
    for (long n = 2; n <= 4; ++n) {
        auto r = weil_height(power(golden, Rational(1, n)));
        CHECK(r.overlaps(Rational(1, n) * h, tol_q));
    }
    auto h3 = weil_height(power(golden, Rational(3)));
    CHECK(h3.overlaps(Rational(3) * h, tol_q));
}

TEST_CASE("sub-additivity and torsion invariance") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        RadicalExpr a = random_radical(rng), b = random_radical(rng);
        auto hab = sunit_height(a * b).value;
        auto ha = sunit_height(a).value, hb = sunit_height(b).value;
        CHECK(hab.lo <= ha.hi + hb.hi + 2 * tol_q);
        RadicalExpr z = RadicalExpr::root_of_unity(9, trial % 9);
        auto hz = sunit_height(z * a);
        CHECK(hz.log_coefficients == sunit_height(a).log_coefficients);
    }
}

TEST_CASE("roots of unity have exactly zero height") {
    for (long n = 1; n <= 30; ++n) {
        auto h = weil_height(AlgebraicNumber::root_of_unity(n, 1));
        CHECK(h.hi == 0);
    }
}
