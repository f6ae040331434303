#pragma once

#include "heightforge/core/algebraic.hpp"
#include "heightforge/core/int_poly.hpp"

#include <map>
#include <string>

namespace heightforge {

/// zeta_M^a * prod p^(q_p): a root of unity times rational powers of primes.
/// Stored canonically as the turn a/M in [0, 1) (reduced) and a map from
/// primes to nonzero rational exponents.
class RadicalExpr {
public:
    RadicalExpr() = default;  // the number 1

    static RadicalExpr from_rational(const Rational& q);
    /// exp(2 pi i a / M)
    static RadicalExpr root_of_unity(long order, long exponent);
    /// base^exponent for a positive rational base (real positive branch).
    static RadicalExpr power_of(const Rational& base, const Rational& exponent);
    /// Canonicalizes: turn reduced mod 1, zero exponents dropped. Keys must be primes.
    static RadicalExpr from_parts(const Rational& turn, std::map<Integer, Rational> prime_exponents);

    const Rational& turn() const { return turn_; }
    long torsion_order() const;
    long torsion_exponent() const;
    const std::map<Integer, Rational>& exponents() const { return exps_; }

    bool is_torsion() const { return exps_.empty(); }
    bool is_rational() const;
    Rational rational_value() const;
    /// Least common multiple of the exponent denominators.
    Integer radical_index() const;

    RadicalExpr inverse() const;
    /// Branch rule: the turn is first normalized into (-1/2, 1/2], so the
    /// result is |x|^q exp(i q arg x) with arg x in (-pi, pi].
    RadicalExpr pow(const Rational& q) const;
    friend RadicalExpr operator*(const RadicalExpr& a, const RadicalExpr& b);
    friend RadicalExpr operator/(const RadicalExpr& a, const RadicalExpr& b) { return a * b.inverse(); }
    friend bool operator==(const RadicalExpr& a, const RadicalExpr& b) {
        return a.turn_ == b.turn_ && a.exps_ == b.exps_;
    }

    IntPoly minimal_polynomial() const;
    AlgebraicNumber to_algebraic() const;
    ComplexInterval enclosure(long precision) const;

    /// Canonical surface syntax, e.g. "zeta(12)^5 * 2^(2/3) * 3^(-1/4)" or "-3/2".
    std::string to_string() const;

private:
    Rational turn_ = 0;
    std::map<Integer, Rational> exps_;
};

/// Prime factorization of a positive integer. Trial division to 10^6, then a
/// probable-prime test on the cofactor; throws UnsupportedExpression when a
/// composite cofactor remains.
std::map<Integer, long> factor_integer(const Integer& n);

} // namespace heightforge
