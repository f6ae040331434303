#include "heightforge/core/radical.hpp"

#include "heightforge/core/errors.hpp"

#include <numeric>
#include <sstream>

namespace heightforge {

namespace {

Rational frac(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational r = x - f;
    r.canonicalize();
    return r;
}

std::optional<Integer> pollard_rho(const Integer& n) {
    for (unsigned long c = 1; c < 50; ++c) {
        Integer x = 2, y = 2, d = 1;
        for (long steps = 0; d == 1 && steps < 2000000; ++steps) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Integer diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n)
            return d;
    }
    return std::nullopt;
}

void factor_into(const Integer& n, std::map<Integer, long>& out) {
    if (n == 1)
        return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        ++out[n];
        return;
    }
    auto d = pollard_rho(n);
    if (!d)
        throw UnsupportedExpression("could not factor " + n.get_str());
    factor_into(*d, out);
    factor_into(n / *d, out);
}

void add_exponents(std::map<Integer, Rational>& into, const std::map<Integer, long>& f, const Rational& scale) {
    for (const auto& [p, e] : f)
        into[p] += scale * e;
}

} // namespace

std::map<Integer, long> factor_integer(const Integer& n_in) {
    if (n_in <= 0)
        throw InvalidInput("factor_integer needs a positive integer");
    std::map<Integer, long> out;
    Integer n = n_in;
    for (unsigned long p = 2; p < 1000000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    factor_into(n, out);
    return out;
}

RadicalExpr RadicalExpr::from_parts(const Rational& turn, std::map<Integer, Rational> prime_exponents) {
    RadicalExpr x;
    x.turn_ = frac(turn);
    for (auto& [p, e] : prime_exponents) {
        e.canonicalize();
        if (e != 0)
            x.exps_.emplace(p, e);
    }
    return x;
}

RadicalExpr RadicalExpr::from_rational(const Rational& q_in) {
    Rational q = q_in;
    q.canonicalize();
    if (q == 0)
        throw InvalidInput("zero has no radical form");
    std::map<Integer, Rational> exps;
    add_exponents(exps, factor_integer(abs(q.get_num())), Rational(1));
    add_exponents(exps, factor_integer(q.get_den()), Rational(-1));
    return from_parts(q < 0 ? Rational(1, 2) : Rational(0), std::move(exps));
}

RadicalExpr RadicalExpr::root_of_unity(long order, long exponent) {
    if (order <= 0)
        throw InvalidInput("root of unity order must be positive");
    return from_parts(ratio(exponent, order), {});
}

RadicalExpr RadicalExpr::power_of(const Rational& base, const Rational& exponent) {
    if (base <= 0)
        throw InvalidInput("radicand must be a positive rational");
    return from_rational(base).pow(exponent);
}

long RadicalExpr::torsion_order() const { return turn_.get_den().get_si(); }

long RadicalExpr::torsion_exponent() const { return turn_.get_num().get_si(); }

bool RadicalExpr::is_rational() const {
    if (turn_ != 0 && turn_ != Rational(1, 2))
        return false;
    for (const auto& [p, e] : exps_)
        if (e.get_den() != 1)
            return false;
    return true;
}

Rational RadicalExpr::rational_value() const {
    if (!is_rational())
        throw InvalidInput("not a rational number");
    Rational v = 1;
    for (const auto& [p, e] : exps_) {
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), Integer(abs(e.get_num())).get_ui());
        if (e > 0)
            v *= pk;
        else
            v /= pk;
    }
    return turn_ == 0 ? v : -v;
}

Integer RadicalExpr::radical_index() const {
    Integer n = 1;
    for (const auto& [p, e] : exps_)
        mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), e.get_den_mpz_t());
    return n;
}

RadicalExpr RadicalExpr::inverse() const {
    std::map<Integer, Rational> exps;
    for (const auto& [p, e] : exps_)
        exps.emplace(p, -e);
    return from_parts(-turn_, std::move(exps));
}

RadicalExpr RadicalExpr::pow(const Rational& q_in) const {
    Rational q = q_in;
    q.canonicalize();
    Rational t = turn_ > Rational(1, 2) ? Rational(turn_ - 1) : turn_;
    std::map<Integer, Rational> exps;
    for (const auto& [p, e] : exps_)
        exps.emplace(p, e * q);
    return from_parts(t * q, std::move(exps));
}

RadicalExpr operator*(const RadicalExpr& a, const RadicalExpr& b) {
    std::map<Integer, Rational> exps = a.exps_;
    for (const auto& [p, e] : b.exps_)
        exps[p] += e;
    return RadicalExpr::from_parts(a.turn_ + b.turn_, std::move(exps));
}

ComplexInterval RadicalExpr::enclosure(long precision) const {
    const long w = precision + 16;
    Interval log_modulus(w);
    for (const auto& [p, e] : exps_)
        log_modulus = log_modulus + Interval::log_of(Rational(p), w) * Interval::exact(e, w);
    Interval modulus = exp(log_modulus);
    if (turn_ == 0)
        return {modulus, Interval(w)};
    if (turn_ == Rational(1, 2))
        return {-modulus, Interval(w)};
    return polar(modulus, Interval::pi(w) * Interval::exact(2 * turn_, w));
}

AlgebraicNumber RadicalExpr::to_algebraic() const {
    if (is_rational())
        return AlgebraicNumber::rational(rational_value());
    PrecisionPolicy policy = PrecisionPolicy::from_environment();
    const long order = torsion_order();
    if (exps_.empty())
        return AlgebraicNumber::root_of_unity(order, torsion_exponent());

    // rho = prod p^q has minimal polynomial B x^N - A with A/B = rho^N
    // (irreducible: A/B is not an l-th power for any prime l | N).
    const Integer n = radical_index();
    if (!n.fits_ulong_p() || n > 100000)
        throw UnsupportedExpression("radical index too large");
    const unsigned long N = n.get_ui();
    Integer A = 1, B = 1;
    for (const auto& [p, e] : exps_) {
        Rational k = e * n;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), Integer(abs(k.get_num())).get_ui());
        (k > 0 ? A : B) *= pk;
    }
    // x = zeta * rho satisfies (x^N / (A/B)) = zeta^N, a primitive M'-th root of unity.
    const long m2 = order / std::gcd(order, static_cast<long>(N % static_cast<unsigned long>(order)));
    IntPoly phi = cyclotomic_polynomial(static_cast<unsigned>(m2));
    const int d = phi.degree();
    std::vector<Integer> coeffs(static_cast<std::size_t>(d) * N + 1, 0);
    for (int k = 0; k <= d; ++k) {
        Integer bk, ak;
        mpz_pow_ui(bk.get_mpz_t(), B.get_mpz_t(), static_cast<unsigned long>(k));
        mpz_pow_ui(ak.get_mpz_t(), A.get_mpz_t(), static_cast<unsigned long>(d - k));
        coeffs[static_cast<std::size_t>(k) * N] = phi.coefficients()[static_cast<std::size_t>(k)] * bk * ak;
    }
    IntPoly candidate(std::move(coeffs));
    RadicalExpr self = *this;
    return AlgebraicNumber::select_root(
        candidate, [self](long p) { return self.enclosure(p); }, policy);
}

IntPoly RadicalExpr::minimal_polynomial() const {
    if (is_rational()) {
        Rational v = rational_value();
        return IntPoly({-v.get_num(), v.get_den()});
    }
    if (exps_.empty())
        return cyclotomic_polynomial(static_cast<unsigned>(torsion_order()));
    if (turn_ == 0 || turn_ == Rational(1, 2)) {
        const unsigned long N = radical_index().get_ui();
        Integer A = 1, B = 1;
        for (const auto& [p, e] : exps_) {
            Rational k = e * N;
            Integer pk;
            mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), Integer(abs(k.get_num())).get_ui());
            (k > 0 ? A : B) *= pk;
        }
        IntPoly f = IntPoly::binomial(N, B, A);
        return turn_ == 0 ? f : f.negate_variable().primitive_part();
    }
    return to_algebraic().minimal_polynomial();
}

std::string RadicalExpr::to_string() const {
    if (is_rational())
        return rational_value().get_str();
    std::vector<std::string> parts;
    std::string sign;
    if (turn_ == Rational(1, 2)) {
        sign = "-";
    } else if (turn_ != 0) {
        std::string z = "zeta(" + std::to_string(torsion_order()) + ")";
        if (torsion_exponent() != 1)
            z += "^" + std::to_string(torsion_exponent());
        parts.push_back(z);
    }
    for (const auto& [p, e] : exps_) {
        std::string s = p.get_str();
        if (e == 1) {
        } else if (e.get_den() == 1 && e > 0) {
            s += "^" + e.get_str();
        } else {
            s += "^(" + e.get_str() + ")";
        }
        parts.push_back(s);
    }
    std::string out = sign;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += " * ";
        out += parts[i];
    }
    if (parts.empty())
        out += "1";
    return out;
}

} // namespace heightforge
