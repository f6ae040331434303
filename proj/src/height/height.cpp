#include "heightforge/height/height.hpp"

#include "heightforge/core/errors.hpp"

namespace heightforge {

namespace {

Integer power_product(const std::map<Integer, Rational>& exps, const Integer& n, bool positive_side) {
    Integer out = 1;
    for (const auto& [p, e] : exps) {
        if ((e > 0) != positive_side)
            continue;
        Rational k = abs(e) * n;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k.get_num().get_ui());
        out *= pk;
    }
    return out;
}

} // namespace

CertifiedInterval log_combination(const std::map<Integer, Rational>& coefficients, double tol) {
    if (coefficients.empty())
        return CertifiedInterval::exact(0);
    const PrecisionPolicy policy = PrecisionPolicy::from_environment();
    for (long p = std::max(policy.initial_bits, 64L); p <= policy.ceiling_bits; p *= 2) {
        Interval acc(p);
        for (const auto& [prime, c] : coefficients)
            acc = acc + Interval::log_of(Rational(prime), p) * Interval::exact(c, p);
        if (acc.width() <= tol)
            return CertifiedInterval::from(acc);
    }
    throw PrecisionExhausted("log combination did not reach the requested width");
}

CertifiedInterval weil_height(const AlgebraicNumber& a, const HeightOptions& options) {
    if (!(options.tol > 0))
        throw InvalidInput("tolerance must be positive");
    if (a.is_rational()) {
        Rational q = a.rational_value();
        if (q == 0)
            throw InvalidInput("height of zero is undefined");
        Integer m = std::max(Integer(abs(q.get_num())), q.get_den());
        if (m == 1)
            return CertifiedInterval::exact(0);
        std::map<Integer, Rational> c{{m, Rational(1)}};
        return log_combination(c, options.tol);
    }
    if (options.kronecker_shortcut && is_root_of_unity(a))
        return CertifiedInterval::exact(0);

    const IntPoly& f = a.minimal_polynomial();
    const long d = f.degree();
    const PrecisionPolicy& policy = a.policy();
    double radius = options.tol / 8.0;
    for (long p = std::max(policy.initial_bits, 64L); p <= policy.ceiling_bits; p *= 2, radius /= 16.0) {
        RootIsolation iso = isolate_roots(f, radius, policy, p);
        const long w = iso.precision + 16;
        Interval one = Interval::exact(Rational(1), w);
        Interval sum = log(Interval::exact(f.lead(), w));
        for (const auto& disc : iso.discs)
            sum = sum + log(max(one, disc.modulus()));
        Interval h = sum / Interval::exact(Rational(d), w);
        if (h.width() <= options.tol) {
            // The height is non-negative; clip the lower end.
            CertifiedInterval out = CertifiedInterval::from(h);
            if (out.lo < 0)
                out.lo = 0;
            return out;
        }
    }
    throw PrecisionExhausted("weil height did not reach the requested width for " + f.to_string());
}

std::string SunitHeight::symbolic() const {
    if (log_coefficients.empty())
        return "0";
    std::string out;
    for (const auto& [p, c] : log_coefficients) {
        if (!out.empty())
            out += " + ";
        if (c != 1)
            out += c.get_str() + "*";
        out += "log(" + p.get_str() + ")";
    }
    return out;
}

SunitHeight sunit_height(const RadicalExpr& x, double tol) {
    const auto& exps = x.exponents();
    const Integer n = x.radical_index();
    // Compare prod_{q>0} p^(qN) with prod_{q<0} p^(-qN) exactly to decide which side is larger.
    const Integer num = power_product(exps, n, true);
    const Integer den = power_product(exps, n, false);
    const bool positive_side = num >= den;
    SunitHeight out;
    for (const auto& [p, e] : exps)
        if ((e > 0) == positive_side)
            out.log_coefficients.emplace(p, abs(e));
    out.value = log_combination(out.log_coefficients, tol);
    return out;
}

} // namespace heightforge
