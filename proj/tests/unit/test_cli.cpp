#include "doctest.h"

#include "golden.hpp"
#include "heightforge/cli/cli.hpp"
#include "heightforge/cli/parser.hpp"
#include "heightforge/core/errors.hpp"

#include <cstdlib>
#include <random>

using namespace heightforge;

namespace {

const std::string golden_dir = HEIGHTFORGE_GOLDEN_DIR;

RadicalExpr random_radical(std::mt19937& rng) {
    std::uniform_int_distribution<long> order(1, 12), num(-4, 4), den(1, 6), pick(0, 3);
    const long n = order(rng);
    std::map<Integer, Rational> exps;
    for (long p : {2L, 3L, 5L, 7L})
        if (pick(rng) != 0)
            exps[p] = ratio(num(rng), den(rng));
    for (auto it = exps.begin(); it != exps.end();)
        it = it->second == 0 ? exps.erase(it) : std::next(it);
    return RadicalExpr::from_parts(ratio(std::uniform_int_distribution<long>(0, n - 1)(rng), n), exps);
}

// Random surface text, not in canonical form.
std::string random_text(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth > 2 ? 2 : 5);
    std::uniform_int_distribution<long> small(1, 12), exp(-3, 3), den(2, 5);
    switch (kind(rng)) {
    case 0: return std::to_string(small(rng));
    case 1: return "zeta(" + std::to_string(small(rng)) + ")";
    case 2: return std::to_string(small(rng)) + "/" + std::to_string(small(rng));
    case 3: return random_text(rng, depth + 1) + " * " + random_text(rng, depth + 1);
    case 4: return "(" + random_text(rng, depth + 1) + ") / " + random_text(rng, depth + 1);
    default: {
        long e = exp(rng);
        std::string base = "(" + random_text(rng, depth + 1) + ")";
        if (e == 0)
            return base;
        return base + "^(" + std::to_string(e) + "/" + std::to_string(den(rng)) + ")";
    }
    }
}

int column_of(const std::string& text) {
    try {
        parse_expression(text);
    } catch (const ParseError& e) {
        return e.column();
    }
    return 0;
}

} // namespace

TEST_CASE("parser examples") {
    RadicalExpr r = parse_radical("2^(1/2)");
    CHECK(r.turn() == 0);
    CHECK(r.exponents() == std::map<Integer, Rational>{{2, Rational(1, 2)}});

    r = parse_radical("zeta(3)*6/2");
    CHECK(r.turn() == Rational(1, 3));
    CHECK(r.exponents() == std::map<Integer, Rational>{{3, 1}});

    r = parse_radical("zeta(12)^5 * 2^(2/3) / 3^(1/4)");
    CHECK(r.to_string() == "zeta(12)^5 * 2^(2/3) * 3^(-1/4)");
    CHECK(parse_radical("-3/2").rational_value() == Rational(-3, 2));
    CHECK(parse_radical("2^3/4").rational_value() == 2);  // ^ binds tighter
    CHECK(parse_radical("2^(-2)").rational_value() == Rational(1, 4));
    CHECK(parse_radical("--2").rational_value() == 2);

    GroupElement g = parse_expression("root([-1, -1, 1], 8/5, 17/10)");
    CHECK_FALSE(g.is_radical());
    CHECK(g.algebraic().minimal_polynomial() == IntPoly{-1, -1, 1});
    // Rational roots come back in radical form.
    CHECK(parse_expression("root([-6, 4], 0, 2)").is_radical());
    CHECK_THROWS_AS(parse_radical("root([-1, -1, 1], 8/5, 17/10)"), UnsupportedExpression);
}

TEST_CASE("parse errors carry positions") {
    CHECK(column_of("2^^3") == 3);
    CHECK(column_of("2 $ 3") == 3);
    CHECK(column_of("2^3^2") == 4);
    CHECK(column_of("2 * ") == 5);
    CHECK(column_of("zeta(0)") == 6);
    CHECK(column_of("foo(2)") == 1);
    CHECK(column_of("2 + 3") == 3);
    CHECK(column_of("(2") == 3);
    CHECK(column_of("2)") == 2);
    CHECK(column_of("0") == 1);
    CHECK(column_of("2^(1/0)") == 6);
    CHECK(column_of("2^x") == 3);
    CHECK(column_of("root([1], 0, 1)") == 1);
    try {
        parse_expression("2 *\n  ^3", 4);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
        CHECK(e.column() == 3);
    }
}

TEST_CASE("canonical forms round trip") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        RadicalExpr x = random_radical(rng);
        const std::string s = x.to_string();
        RadicalExpr y = parse_radical(s);
        CHECK_MESSAGE(y == x, s);
        CHECK(y.to_string() == s);
    }
    for (int i = 0; i < 100; ++i) {
        const std::string text = random_text(rng, 0);
        RadicalExpr x = parse_radical(text);
        const std::string s = x.to_string();
        CHECK_MESSAGE(parse_radical(s) == x, text);
        CHECK(parse_radical(s).to_string() == s);
    }
}

TEST_CASE("tower expressions") {
    RadicalTower t = RadicalTower::build(12, {2, 3}, {3, 4});
    TowerElement a = parse_tower_expression("1 + 2^(1/3)", t);
    CHECK(t.support(a).size() == 2);
    TowerElement b = parse_tower_expression("(1 + 2^(1/3)) * (1 - 2^(1/3) + 2^(2/3)) - 2", t);
    CHECK(t.equal(b, t.one()));  // 1 + x^3 = 3
    TowerElement c = parse_tower_expression("3^(3/4) / 3^(1/4)", t);
    CHECK(t.in_base(c));
    CHECK(t.equal(parse_tower_expression("zeta(12)^2 - zeta(6)", t), t.zero()));
    CHECK(t.equal(parse_tower_expression("(2^(1/3))^3", t), parse_tower_expression("2", t)));
    CHECK_THROWS_AS(parse_tower_expression("5^(1/2)", t), UnsupportedExpression);
    CHECK_THROWS_AS(parse_tower_expression("zeta(5)", t), ParseError);
    CHECK_THROWS_AS(parse_tower_expression("(1 + 2^(1/3))^(1/2)", t), ParseError);
    CHECK_THROWS_AS(parse_tower_expression("1 / (2 - 2)", t), ParseError);
}

TEST_CASE("numbers and lists") {
    CHECK(parse_rational("0.75") == Rational(3, 4));
    CHECK(parse_rational("-2") == -2);
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK(split_list("2, 3,root([1,0,-2], 1, 2)") == std::vector<std::string>{"2", "3", "root([1,0,-2], 1, 2)"});
    CHECK(split_list("").empty());
    CHECK_THROWS_AS(split_list("2,,3"), InvalidInput);
}

TEST_CASE("golden transcript") {
    const std::string expected = golden::read_file(golden_dir + "/expected.txt");
    REQUIRE_FALSE(expected.empty());
    CHECK(golden::commands(golden_dir).size() == 30);
    const std::string first = golden::transcript(golden_dir);
    CHECK(first == expected);
    CHECK(golden::transcript(golden_dir) == first);
}

TEST_CASE("exit codes") {
    using golden::run;
    CHECK(run("height 2", golden_dir).code == exit_ok);
    CHECK(run("height", golden_dir).code == exit_usage);
    CHECK(run("height 2 --tol -1", golden_dir).code == exit_usage);
    CHECK(run("frobnicate", golden_dir).code == exit_usage);
    CHECK(run("gap --candidates /nonexistent/file", golden_dir).code == exit_usage);
    CHECK(run("height 'root([1,0,1], 0, 2)'", golden_dir).code == exit_usage);
    CHECK(run("height '2^^3'", golden_dir).code == exit_parse);
    auto help = run("--help", golden_dir);
    CHECK(help.code == exit_ok);
    CHECK(help.out.find("qnorm") != std::string::npos);

    ::setenv("HEIGHTFORGE_PRECISION_CEILING", "64", 1);
    auto inconclusive = run("depend 'root([-1,-1,1], 8/5, 17/10)' 'root([-1,-3,1], 3, 4)'", golden_dir);
    auto precision = run("height 'root([1208925819614629174706177,-2417851639229258349412352,1208925819614629174706176], "
                         "0, 2, 0, 1)'",
                         golden_dir);
    ::unsetenv("HEIGHTFORGE_PRECISION_CEILING");
    CHECK(inconclusive.code == exit_inconclusive);
    CHECK(inconclusive.out == "\"inconclusive\"\n");
    CHECK(inconclusive.err.find("\"error\":\"inconclusive\"") != std::string::npos);
    CHECK(precision.code == exit_precision);
    CHECK(precision.err.find("\"error\":\"precision\"") != std::string::npos);
    // With the default ceiling both settle.
    CHECK(run("depend 'root([-1,-1,1], 8/5, 17/10)' 'root([-1,-3,1], 3, 4)'", golden_dir).out == "null\n");
}

TEST_CASE("leading zeros are decimal") {
    CHECK(parse_radical("010").rational_value() == 10);
    CHECK(parse_radical("2^(03/09)").to_string() == "2^(1/3)");
    CHECK(parse_rational("0.075") == Rational(3, 40));
    CHECK(parse_rational("010/4") == Rational(5, 2));
}
