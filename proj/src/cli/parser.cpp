#include "heightforge/cli/parser.hpp"

#include "heightforge/core/errors.hpp"

#include <cctype>
#include <optional>

namespace heightforge {

namespace {

struct Token {
    enum Kind { integer, ident, symbol, end } kind;
    std::string text;
    int line, column;
};

std::vector<Token> lex(const std::string& s, int line) {
    std::vector<Token> out;
    int col = 1;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        const int start = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            out.push_back({Token::integer, s.substr(i, j - i), line, start});
            col += static_cast<int>(j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::ident, s.substr(i, j - i), line, start});
            col += static_cast<int>(j - i);
            i = j;
        } else if (std::string("+-*/^()[],").find(c) != std::string::npos) {
            out.push_back({Token::symbol, std::string(1, c), line, start});
            ++col;
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'", line, start);
        }
    }
    out.push_back({Token::end, "", line, col});
    return out;
}

// Recursive descent shared by the group and tower grammars; the semantic
// actions live in Sem.
template <class Sem>
class Parser {
public:
    using Value = typename Sem::Value;

    Parser(std::vector<Token> tokens, Sem& sem) : toks_(std::move(tokens)), sem_(sem) {}

    Value parse_all() {
        Value v = sum();
        if (peek().kind != Token::end)
            fail("unexpected '" + peek().text + "'");
        return v;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at(const char* sym) const { return peek().kind == Token::symbol && peek().text == sym; }
    [[noreturn]] void fail(const std::string& what) const { fail_at(what, peek()); }
    [[noreturn]] static void fail_at(const std::string& what, const Token& t) {
        throw ParseError(what, t.line, t.column);
    }
    void expect(const char* sym) {
        if (!at(sym))
            fail(std::string("expected '") + sym + "'" + (peek().kind == Token::end ? " before end of input" : ""));
        ++pos_;
    }
    Integer integer() {
        if (peek().kind != Token::integer)
            fail(peek().kind == Token::end ? "expected an integer before end of input"
                                           : "expected an integer, found '" + peek().text + "'");
        return Integer(next().text, 10);
    }
    Rational signed_rational() {
        bool negative = false;
        if (at("-")) {
            ++pos_;
            negative = true;
        }
        Integer num = integer();
        Integer den = 1;
        if (at("/")) {
            ++pos_;
            const Token& t = peek();
            den = integer();
            if (den == 0)
                fail_at("zero denominator", t);
        }
        return ratio(negative ? Integer(-num) : num, den);
    }

    Value sum() {
        Value v = product();
        while (at("+") || at("-")) {
            const Token& op = next();
            if (!Sem::allows_sums)
                fail_at("'" + op.text + "' is only allowed in tower expressions", op);
            Value rhs = product();
            v = op.text == "+" ? sem_.add(v, rhs) : sem_.sub(v, rhs);
        }
        return v;
    }

    Value product() {
        Value v = unary();
        while (at("*") || at("/")) {
            const Token& op = next();
            Value rhs = unary();
            v = op.text == "*" ? sem_.mul(v, rhs, op) : sem_.div(v, rhs, op);
        }
        return v;
    }

    Value unary() {
        if (at("-")) {
            ++pos_;
            return sem_.neg(unary());
        }
        return power();
    }

    Value power() {
        Value base = atom();
        if (!at("^"))
            return base;
        const Token& op = next();
        Rational e;
        if (at("(")) {
            ++pos_;
            e = signed_rational();
            expect(")");
        } else if (peek().kind == Token::integer) {
            e = Rational(integer());
        } else {
            fail("exponent must be an integer or a parenthesized rational");
        }
        if (at("^"))
            fail("chained exponents need parentheses");
        return sem_.pow(base, e, op);
    }

    Value atom() {
        const Token& t = peek();
        if (t.kind == Token::integer) {
            ++pos_;
            return sem_.integer(Integer(t.text, 10), t);
        }
        if (t.kind == Token::ident && t.text == "zeta") {
            ++pos_;
            expect("(");
            const Token& nt = peek();
            Integer n = integer();
            expect(")");
            if (n < 1 || !n.fits_slong_p())
                fail_at("zeta order must be a positive integer", nt);
            return sem_.zeta(n.get_si(), nt);
        }
        if (t.kind == Token::ident && t.text == "root") {
            ++pos_;
            expect("(");
            expect("[");
            std::vector<Integer> coeffs;
            for (;;) {
                bool negative = false;
                if (at("-")) {
                    ++pos_;
                    negative = true;
                }
                Integer c = integer();
                coeffs.push_back(negative ? Integer(-c) : c);
                if (!at(","))
                    break;
                ++pos_;
            }
            expect("]");
            std::vector<Rational> bounds;
            while (at(",")) {
                ++pos_;
                bounds.push_back(signed_rational());
            }
            expect(")");
            if (bounds.size() != 2 && bounds.size() != 4)
                fail_at("root needs a real interval or a complex box", t);
            return sem_.root(coeffs, bounds, t);
        }
        if (t.kind == Token::ident)
            fail("unknown name '" + t.text + "'");
        if (at("(")) {
            ++pos_;
            Value v = sum();
            expect(")");
            return v;
        }
        fail(t.kind == Token::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Sem& sem_;
};

struct GroupSemantics {
    static constexpr bool allows_sums = false;
    // Radical until a root(...) term forces the general representation.
    struct Value {
        std::optional<RadicalExpr> radical;
        std::optional<AlgebraicNumber> general;

        AlgebraicNumber algebraic() const { return general ? *general : radical->to_algebraic(); }
    };

    Value integer(const Integer& n, const Token& t) {
        if (n == 0)
            throw ParseError("0 is not an element of the multiplicative group", t.line, t.column);
        return {RadicalExpr::from_rational(Rational(n)), std::nullopt};
    }
    Value zeta(long n, const Token&) { return {RadicalExpr::root_of_unity(n, 1), std::nullopt}; }
    Value root(const std::vector<Integer>& coeffs, const std::vector<Rational>& b, const Token& t) {
        IntPoly f(coeffs);
        if (f.degree() < 1)
            throw ParseError("root needs a nonconstant polynomial", t.line, t.column);
        if (b[0] > b[1] || (b.size() == 4 && b[2] > b[3]))
            throw ParseError("empty root interval", t.line, t.column);
        ComplexBox box{b[0], b[1], b.size() == 4 ? b[2] : Rational(0), b.size() == 4 ? b[3] : Rational(0)};
        AlgebraicNumber a = AlgebraicNumber::select_root(
            f, [box](long p) { return box.to_interval(p); }, PrecisionPolicy::from_environment());
        if (a.is_rational() && a.rational_value() == 0)
            throw ParseError("0 is not an element of the multiplicative group", t.line, t.column);
        if (a.is_rational())
            return {RadicalExpr::from_rational(a.rational_value()), std::nullopt};
        return {std::nullopt, a};
    }
    Value mul(const Value& a, const Value& b, const Token&) {
        if (a.radical && b.radical)
            return {*a.radical * *b.radical, std::nullopt};
        return {std::nullopt, multiply(a.algebraic(), b.algebraic())};
    }
    Value div(const Value& a, const Value& b, const Token&) {
        if (a.radical && b.radical)
            return {*a.radical / *b.radical, std::nullopt};
        return {std::nullopt, multiply(a.algebraic(), inverse(b.algebraic()))};
    }
    Value neg(const Value& a) {
        if (a.radical)
            return {*a.radical * RadicalExpr::from_rational(-1), std::nullopt};
        return {std::nullopt, multiply(*a.general, AlgebraicNumber::rational(-1))};
    }
    Value pow(const Value& a, const Rational& e, const Token&) {
        if (a.radical)
            return {a.radical->pow(e), std::nullopt};
        return {std::nullopt, power(*a.general, e)};
    }
    Value add(const Value& a, const Value&) { return a; }
    Value sub(const Value& a, const Value&) { return a; }
};

struct TowerSemantics {
    static constexpr bool allows_sums = true;
    struct Value {
        TowerElement t;
        std::optional<RadicalExpr> radical;  // while the value is a single monomial
    };
    const RadicalTower& tower;

    Value integer(const Integer& n, const Token&) {
        Value v{tower.from_base(tower.base().from_rational(Rational(n))), std::nullopt};
        if (n != 0)
            v.radical = RadicalExpr::from_rational(Rational(n));
        return v;
    }
    Value zeta(long n, const Token& t) {
        const long M = tower.base().conductor();
        const long top = M % 2 == 0 ? M : 2 * M;
        if (top % n != 0)
            throw ParseError("zeta(" + std::to_string(n) + ") is not in the base field", t.line, t.column);
        return {tower.from_base(tower.base().root_of_unity(n, 1)), RadicalExpr::root_of_unity(n, 1)};
    }
    Value root(const std::vector<Integer>&, const std::vector<Rational>&, const Token& t) {
        throw ParseError("root(...) is not available in tower expressions", t.line, t.column);
    }
    Value mul(const Value& a, const Value& b, const Token&) {
        Value v{tower.mul(a.t, b.t), std::nullopt};
        if (a.radical && b.radical)
            v.radical = *a.radical * *b.radical;
        return v;
    }
    Value div(const Value& a, const Value& b, const Token& op) {
        if (tower.is_zero(b.t))
            throw ParseError("division by zero", op.line, op.column);
        Value v{tower.mul(a.t, tower.inverse(b.t)), std::nullopt};
        if (a.radical && b.radical)
            v.radical = *a.radical / *b.radical;
        return v;
    }
    Value neg(const Value& a) {
        Value v{tower.neg(a.t), std::nullopt};
        if (a.radical)
            v.radical = *a.radical * RadicalExpr::from_rational(-1);
        return v;
    }
    Value pow(const Value& a, const Rational& e, const Token& op) {
        if (e.get_den() == 1) {
            if (!e.get_num().fits_slong_p())
                throw ParseError("exponent too large", op.line, op.column);
            if (e < 0 && tower.is_zero(a.t))
                throw ParseError("division by zero", op.line, op.column);
            Value v{tower.pow(a.t, e.get_num().get_si()), std::nullopt};
            if (a.radical)
                v.radical = a.radical->pow(e);
            return v;
        }
        if (!a.radical)
            throw ParseError("rational exponents need a product of radicals as base", op.line, op.column);
        RadicalExpr r = a.radical->pow(e);
        return {tower.from_radical(r), r};
    }
    Value add(const Value& a, const Value& b) { return {tower.add(a.t, b.t), std::nullopt}; }
    Value sub(const Value& a, const Value& b) { return {tower.sub(a.t, b.t), std::nullopt}; }
};

} // namespace

GroupElement parse_expression(const std::string& text, int line) {
    GroupSemantics sem;
    Parser<GroupSemantics> p(lex(text, line), sem);
    auto v = p.parse_all();
    if (v.radical)
        return GroupElement(*v.radical);
    return GroupElement(*v.general);
}

RadicalExpr parse_radical(const std::string& text, int line) {
    GroupElement g = parse_expression(text, line);
    if (!g.is_radical())
        throw UnsupportedExpression("expected a root of unity times rational powers of rationals");
    return g.radical();
}

TowerElement parse_tower_expression(const std::string& text, const RadicalTower& tower, int line) {
    TowerSemantics sem{tower};
    Parser<TowerSemantics> p(lex(text, line), sem);
    return p.parse_all().t;
}

Rational parse_rational(const std::string& text) {
    std::string s = text;
    if (s.empty())
        throw InvalidInput("empty number");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        try {
            Integer num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
            if (den == 0)
                throw InvalidInput("zero denominator in '" + text + "'");
            return ratio(num, den);
        } catch (const std::invalid_argument&) {
            throw InvalidInput("not a number: '" + text + "'");
        }
    }
    // Decimal with optional exponent, read exactly.
    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-')
        negative = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
        if (s[i] == '.' && !seen_dot) {
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i];
            any = true;
            if (seen_dot)
                --scale;
        } else {
            throw InvalidInput("not a number: '" + text + "'");
        }
    }
    if (!any)
        throw InvalidInput("not a number: '" + text + "'");
    if (i < s.size()) {
        try {
            std::size_t used = 0;
            scale += std::stol(s.substr(i + 1), &used);
            if (used != s.size() - i - 1)
                throw InvalidInput("not a number: '" + text + "'");
        } catch (const std::logic_error&) {
            throw InvalidInput("not a number: '" + text + "'");
        }
    }
    if (scale > 100000 || scale < -100000)
        throw InvalidInput("exponent out of range in '" + text + "'");
    Integer num(digits, 10), p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? ratio(num, p10) : Rational(num * p10);
    return negative ? Rational(-q) : q;
}

} // namespace heightforge
