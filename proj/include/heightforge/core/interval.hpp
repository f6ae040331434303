#pragma once

#include "heightforge/core/int_poly.hpp"

#include <mpfr.h>

#include <string>

namespace heightforge {

/// Owning wrapper around an mpfr_t. Copies keep the source precision.
class Float {
public:
    explicit Float(long precision = 64);
    Float(const Float& other);
    Float(Float&& other) noexcept;
    Float& operator=(const Float& other);
    Float& operator=(Float&& other) noexcept;
    ~Float();

    static Float from_rational(const Rational& q, long precision, mpfr_rnd_t rnd);
    static Float from_double(double d, long precision);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Exact value; the Float must be finite.
    Rational to_rational() const;
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }

private:
    mpfr_t value_;
};

/// Closed real interval with outward-rounded endpoints.
class Interval {
public:
    explicit Interval(long precision = 64);
    Interval(Float lo, Float hi);

    static Interval exact(const Rational& q, long precision);
    static Interval exact(const Integer& z, long precision);
    static Interval span(const Rational& lo, const Rational& hi, long precision);
    static Interval pi(long precision);
    /// log of a positive rational.
    static Interval log_of(const Rational& q, long precision);

    const Float& lo() const { return lo_; }
    const Float& hi() const { return hi_; }
    long precision() const { return lo_.precision(); }

    Rational lower() const { return lo_.to_rational(); }
    Rational upper() const { return hi_.to_rational(); }
    double mid_double() const;
    Float midpoint() const;
    /// Upper bound on hi - lo.
    double width() const;

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool positive() const { return lo_.sign() > 0; }
    bool negative() const { return hi_.sign() < 0; }
    bool contains(const Rational& q) const;
    bool intersects(const Interval& other) const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    /// Throws std::domain_error when b contains zero.
    friend Interval operator/(const Interval& a, const Interval& b);

    std::string to_string() const;

private:
    Float lo_, hi_;
};

Interval hull(const Interval& a, const Interval& b);
Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
/// Requires a positive interval.
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval abs(const Interval& a);
Interval max(const Interval& a, const Interval& b);
Interval cos(const Interval& a);
Interval sin(const Interval& a);
/// Range of atan2(y, x) over the box, for boxes not meeting the closed
/// negative real axis (the branch cut); throws std::domain_error otherwise.
Interval atan2(const Interval& y, const Interval& x);

struct ComplexInterval {
    Interval re, im;

    explicit ComplexInterval(long precision = 64) : re(precision), im(precision) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    long precision() const { return re.precision(); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool intersects(const ComplexInterval& other) const {
        return re.intersects(other.re) && im.intersects(other.im);
    }

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
    friend ComplexInterval operator*(const ComplexInterval& a, const Interval& b) { return {a.re * b, a.im * b}; }
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);
};

/// Enclosure of |z|.
Interval abs(const ComplexInterval& z);
/// |r| * (cos t, sin t).
ComplexInterval polar(const Interval& r, const Interval& t);
/// Evaluates f at z by Horner's rule in interval arithmetic.
ComplexInterval evaluate(const IntPoly& f, const ComplexInterval& z);

} // namespace heightforge
