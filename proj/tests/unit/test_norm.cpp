#include "doctest.h"

#include "heightforge/core/errors.hpp"
#include "heightforge/norm/linear_program.hpp"
#include "heightforge/norm/quotient.hpp"

#include <chrono>
#include <cmath>
#include <random>

using namespace heightforge;

namespace {

GroupElement q(long a, long b = 1) { return GroupElement(RadicalExpr::from_rational(Rational(a, b))); }
GroupElement rad(long base, long num, long den) { return GroupElement(RadicalExpr::power_of(base, Rational(num, den))); }

GroupBasis primes(std::initializer_list<long> ps) {
    std::vector<GroupElement> g;
    for (long p : ps)
        g.push_back(q(p));
    return GroupBasis(g);
}

// Height of prod p^e_p (up to torsion) in doubles, straight from the definition.
double height_double(const std::map<long, double>& e) {
    double pos = 0, neg = 0;
    for (const auto& [p, x] : e)
        (x > 0 ? pos : neg) += std::fabs(x) * std::log(static_cast<double>(p));
    return std::max(pos, neg);
}

// Brute-force oracle for one generator prime: scan q on a fine grid.
double scan_oracle(const std::map<long, double>& alpha, long gamma_prime) {
    double best = height_double(alpha);
    for (double t = -20; t <= 20; t += 1.0 / 4096) {
        auto e = alpha;
        e[gamma_prime] += t;
        best = std::min(best, height_double(e));
    }
    return best;
}

const double ln2 = std::log(2.0), ln3 = std::log(3.0), ln5 = std::log(5.0);

} // namespace

TEST_CASE("exact simplex") {
    // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    RatMatrix A{{1, 2, 1, 0}, {3, 1, 0, 1}};
    auto sol = minimize_lp(A, {4, 6}, {-1, -1, 0, 0});
    REQUIRE(sol);
    CHECK(sol->value == Rational(-14, 5));
    CHECK(sol->x[0] == Rational(8, 5));
    CHECK(sol->x[1] == Rational(6, 5));
    // x + y = 1, x + y = 2 is infeasible
    CHECK_FALSE(minimize_lp({{1, 1}, {1, 1}}, {1, 2}, {0, 0}));
    // redundant equality rows are tolerated
    sol = minimize_lp({{1, 1}, {2, 2}}, {1, 2}, {1, 2});
    REQUIRE(sol);
    CHECK(sol->value == 1);
    CHECK_THROWS_AS(minimize_lp({{1, -1}}, {0}, {-1, 0}), InvalidInput);
}

TEST_CASE("quotient norm examples") {
    auto r = gamma_seminorm(q(3), primes({2}));
    CHECK(r.method == SeminormMethod::lp);
    CHECK(r.value.width_double() <= 1e-12);
    CHECK(std::fabs(r.value.mid_double() - ln3) < 1e-9);
    CHECK(r.value.contains(Rational(0)) == false);

    r = gamma_seminorm(rad(2, 5, 7), primes({2}));
    CHECK(r.value.lo == 0);
    CHECK(r.value.hi == 0);

    r = gamma_seminorm(q(5), primes({2, 3}));
    CHECK(std::fabs(r.value.mid_double() - ln5) < 1e-9);

    // torsion is invisible
    r = gamma_seminorm(GroupElement(RadicalExpr::root_of_unity(3, 1) * RadicalExpr::from_rational(5)), primes({2}));
    CHECK(std::fabs(r.value.mid_double() - ln5) < 1e-9);

    // no generators: plain height
    r = gamma_seminorm(q(6), GroupBasis(std::vector<GroupElement>{}));
    CHECK(std::fabs(r.value.mid_double() - std::log(6.0)) < 1e-9);

    // 12 = 2^2 * 3 reduces to 3; 10/3 can trade its 2 for part of the 3
    CHECK(std::fabs(gamma_seminorm(q(12), primes({2})).value.mid_double() - ln3) < 1e-9);
    CHECK(std::fabs(gamma_seminorm(q(10, 3), primes({2})).value.mid_double() - scan_oracle({{5, 1}, {3, -1}, {2, 1}}, 2)) <
          1e-6);
}

TEST_CASE("linear program agrees with a brute-force scan") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> ex(-3, 3), den(1, 3);
    const long extra[] = {3, 5, 7};
    for (int trial = 0; trial < 20; ++trial) {
        std::map<long, double> e;
        std::map<Integer, Rational> ee;
        for (long p : {2L, extra[trial % 3]}) {
            Rational x(ex(rng), den(rng));
            x.canonicalize();
            if (x == 0)
                continue;
            e[p] = x.get_d();
            ee[Integer(p)] = x;
        }
        GroupElement alpha(RadicalExpr::from_parts(0, ee));
        auto r = gamma_seminorm(alpha, primes({2}), 1e-10);
        CHECK(std::fabs(r.value.mid_double() - scan_oracle(e, 2)) < 1e-3);
    }
}

TEST_CASE("grid search agrees with the linear program") {
    std::mt19937_64 rng(12345);
    const long pool[] = {2, 3, 5, 7, 11, 13};
    std::uniform_int_distribution<long> ex(-3, 3), den(1, 3), gens(1, 3), extras(0, 2);
    auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long> ps(pool, pool + 6);
        std::shuffle(ps.begin(), ps.end(), rng);
        const long r = gens(rng), x = extras(rng);
        std::vector<GroupElement> g;
        for (long i = 0; i < r; ++i)
            g.push_back(q(ps[i]));
        std::map<Integer, Rational> e;
        for (long i = 0; i < r + x; ++i) {
            Rational v(ex(rng), den(rng));
            v.canonicalize();
            if (v != 0)
                e[Integer(ps[i])] = v;
        }
        GroupElement alpha(RadicalExpr::from_parts(0, e));
        auto lp = gamma_seminorm(alpha, GroupBasis(g), 1e-10, SeminormMethod::lp);
        auto grid = gamma_seminorm(alpha, GroupBasis(g), 1e-8, SeminormMethod::grid);
        CHECK(grid.method == SeminormMethod::grid);
        CHECK(std::fabs(lp.value.mid_double() - grid.value.mid_double()) < 1e-6);
        CHECK(grid.value.overlaps(lp.value));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    MESSAGE("50 instances in " << secs << " s");
}

TEST_CASE("seminorm axioms on random radicals") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> ex(-4, 4), den(1, 4);
    const long ps[] = {2, 3, 5, 7};
    auto random_radical = [&] {
        std::map<Integer, Rational> e;
        for (long p : ps) {
            Rational v(ex(rng), den(rng));
            v.canonicalize();
            if (v != 0)
                e[Integer(p)] = v;
        }
        return RadicalExpr::from_parts(0, e);
    };
    const double tol = 1e-10;
    GroupBasis gamma = primes({2, 3});
    for (int trial = 0; trial < 25; ++trial) {
        RadicalExpr a = random_radical(), b = random_radical();
        const double na = gamma_seminorm(GroupElement(a), gamma, tol).value.mid_double();
        const double nb = gamma_seminorm(GroupElement(b), gamma, tol).value.mid_double();
        const double nab = gamma_seminorm(GroupElement(a * b), gamma, tol).value.mid_double();
        CHECK(nab <= na + nb + 3 * tol);
        for (long n : {-3L, 2L, 5L}) {
            const double nn = gamma_seminorm(GroupElement(a.pow(Rational(n))), gamma, tol).value.mid_double();
            CHECK(std::fabs(nn - std::fabs(static_cast<double>(n)) * na) < 10 * tol);
        }
    }
}

TEST_CASE("norm property and Lipschitz bound") {
    GroupBasis gamma = primes({2, 3});
    for (auto [a, b] : std::vector<std::pair<long, long>>{{5, 1}, {7, 2}, {35, 6}, {10, 9}}) {
        auto v = gamma_seminorm(q(a, b), gamma).value;
        CHECK(v.lo > 0);
    }
    for (const auto& m : {rad(2, 1, 3), rad(6, -2, 5), GroupElement(RadicalExpr::power_of(Rational(3, 4), Rational(7, 2)))}) {
        auto v = gamma_seminorm(m, gamma).value;
        CHECK(v.hi == 0);
    }

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-12, 12), den(1, 6);
    const double tol = 1e-12;
    RadicalExpr alpha = RadicalExpr::from_parts(0, {{Integer(5), Rational(2, 3)}, {Integer(2), Rational(-1)}});
    const double max_norm = ln3;
    for (int trial = 0; trial < 30; ++trial) {
        Rational a1(num(rng), den(rng)), a2(num(rng), den(rng)), b1(num(rng), den(rng)), b2(num(rng), den(rng));
        a1.canonicalize(), a2.canonicalize(), b1.canonicalize(), b2.canonicalize();
        auto h = [&](const Rational& x, const Rational& y) {
            return sunit_height(alpha * RadicalExpr::power_of(2, x) * RadicalExpr::power_of(3, y), tol)
                .value.mid_double();
        };
        const double lhs = std::fabs(h(a1, a2) - h(b1, b2));
        const double l1 = std::fabs(Rational(a1 - b1).get_d()) + std::fabs(Rational(a2 - b2).get_d());
        CHECK(lhs <= max_norm * l1 + 2 * tol);
    }
}

TEST_CASE("gap constants") {
    auto g = remond_constant({q(2)}, CertifiedInterval::exact(Rational(1, 10)));
    CHECK(g.Q == 14);
    CHECK(std::fabs(g.c.mid_double() - ln2 / 196) < 1e-12);
    CHECK(std::fabs(g.c.mid_double() - 0.003537) < 1e-6);

    g = remond_constant({}, CertifiedInterval::exact(Rational(1, 4)));
    CHECK(g.c.lo == Rational(1, 4));

    g = remond_constant({q(2), q(3)}, CertifiedInterval::exact(Rational(1, 2)));
    CHECK(g.Q == 9);
    CHECK(std::fabs(g.c.mid_double() - 2 * ln3 / 729) < 1e-12);
    CHECK(std::fabs(g.c.mid_double() - 0.003014) < 1e-6);

    CHECK_THROWS_AS(remond_constant({q(2)}, CertifiedInterval::exact(0)), InvalidInput);
    CHECK_THROWS_AS(remond_constant({q(2), q(4)}, CertifiedInterval::exact(1)), InvalidInput);

    // kappa = log 3 for H = <2, 3>, Gamma = <2>: the certificate stays below the true gap.
    CertifiedInterval k3 = log_combination({{Integer(3), Rational(1)}}, 1e-15);
    g = remond_constant({q(2)}, k3);
    CHECK(g.Q == 2);
    CHECK(std::fabs(g.c.mid_double() - ln2 / 4) < 1e-12);
    for (const auto& x : {q(3), q(9), q(3, 2), q(12)})
        CHECK(g.c.lo <= gamma_seminorm(x, primes({2})).value.lo);
}

TEST_CASE("gap search") {
    std::vector<GroupElement> cands;
    for (long a = -10; a <= 10; ++a)
        for (long b = 2; b <= 10; ++b)
            if (std::abs(a) >= 2 && std::gcd(a, b) == 1)
                cands.push_back(q(a, b));
    auto res = gap_search(cands, primes({2}));
    REQUIRE(res.min);
    CHECK(std::fabs(res.min->mid_double() - ln3) < 1e-9);
    CHECK(std::fabs(res.values[res.argmin]->mid_double() - ln3) < 1e-9);

    res = gap_search({q(2), q(4), rad(2, 1, 3)}, primes({2}));
    CHECK_FALSE(res.min);
    CHECK(res.excluded.size() == 3);

    res = gap_search({GroupElement(RadicalExpr::root_of_unity(3, 1) * RadicalExpr::from_rational(5))}, primes({2}));
    REQUIRE(res.min);
    CHECK(std::fabs(res.min->mid_double() - ln5) < 1e-9);
}
