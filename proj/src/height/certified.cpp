#include "heightforge/height/certified.hpp"

#include <cmath>

namespace heightforge {

Truth less_than(const CertifiedInterval& x, const Rational& threshold) {
    if (x.hi < threshold)
        return Truth::yes;
    if (x.lo >= threshold)
        return Truth::no;
    return Truth::undecided;
}

Truth greater_or_equal(const CertifiedInterval& x, const Rational& threshold) {
    switch (less_than(x, threshold)) {
    case Truth::yes:
        return Truth::no;
    case Truth::no:
        return Truth::yes;
    default:
        return Truth::undecided;
    }
}

const char* to_string(Truth t) {
    switch (t) {
    case Truth::yes:
        return "yes";
    case Truth::no:
        return "no";
    default:
        return "undecided";
    }
}

std::string decimal_round(const Rational& q, int digits, bool up) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer num = q.get_num() * scale, n;
    if (up)
        mpz_cdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    else
        mpz_fdiv_q(n.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    const bool negative = n < 0;
    std::string s = Integer(abs(n)).get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

namespace {

int digits_for(double tol) {
    if (tol >= 1e-15)
        return 16;
    return static_cast<int>(std::ceil(-std::log10(tol))) + 4;
}

Rational to_binary64(const Rational& q, bool up) {
    Float f = Float::from_rational(q, 53, up ? MPFR_RNDU : MPFR_RNDD);
    return f.to_rational();
}

} // namespace

std::string decimal_lower(const CertifiedInterval& x, double tol) {
    const int digits = digits_for(tol);
    Rational v = tol >= 1e-15 ? to_binary64(x.lo, false) : x.lo;
    return decimal_round(v, digits, false);
}

std::string decimal_upper(const CertifiedInterval& x, double tol) {
    const int digits = digits_for(tol);
    Rational v = tol >= 1e-15 ? to_binary64(x.hi, true) : x.hi;
    return decimal_round(v, digits, true);
}

} // namespace heightforge
