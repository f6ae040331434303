#pragma once

#include "heightforge/core/int_poly.hpp"
#include "heightforge/core/interval.hpp"

#include <string>

namespace heightforge {

/// A real quantity known to lie in [lo, hi]; endpoints are exact rationals
/// (in practice dyadic).
struct CertifiedInterval {
    Rational lo, hi;

    static CertifiedInterval from(const Interval& x) { return {x.lower(), x.upper()}; }
    static CertifiedInterval exact(const Rational& q) { return {q, q}; }

    Rational width() const { return hi - lo; }
    double width_double() const { return Rational(hi - lo).get_d(); }
    double mid_double() const { return Rational((lo + hi) / 2).get_d(); }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    bool overlaps(const CertifiedInterval& o, const Rational& slack = 0) const {
        return lo <= o.hi + slack && o.lo <= hi + slack;
    }
    Interval to_interval(long precision) const { return Interval::span(lo, hi, precision); }

    friend CertifiedInterval operator+(const CertifiedInterval& a, const CertifiedInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    /// Scaling by a rational (flips the ends for negative factors).
    friend CertifiedInterval operator*(const Rational& k, const CertifiedInterval& a) {
        return k >= 0 ? CertifiedInterval{k * a.lo, k * a.hi} : CertifiedInterval{k * a.hi, k * a.lo};
    }
};

/// Three-valued answers for comparisons against interval data.
enum class Truth { no, yes, undecided };

Truth less_than(const CertifiedInterval& x, const Rational& threshold);
Truth greater_or_equal(const CertifiedInterval& x, const Rational& threshold);
const char* to_string(Truth t);

/// Decimal strings for the endpoints, rounded outward. For tol >= 1e-15 the
/// endpoints are first rounded outward to binary64 and then to 16 fractional
/// digits, which keeps output stable across precisions; tighter tolerances
/// get ceil(-log10 tol) + 4 digits straight from the exact endpoints.
std::string decimal_lower(const CertifiedInterval& x, double tol);
std::string decimal_upper(const CertifiedInterval& x, double tol);

/// Decimal string of a rational rounded toward -inf (down) or +inf (up).
std::string decimal_round(const Rational& q, int digits, bool up);

} // namespace heightforge
