#include "heightforge/core/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace heightforge {

Float::Float(long precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Float& Float::operator=(Float&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Float::~Float() { mpfr_clear(value_); }

Float Float::from_rational(const Rational& q, long precision, mpfr_rnd_t rnd) {
    Float f(precision);
    mpfr_set_q(f.value_, q.get_mpq_t(), rnd);
    return f;
}

Float Float::from_double(double d, long precision) {
    Float f(precision);
    mpfr_set_d(f.value_, d, MPFR_RNDN);
    return f;
}

Rational Float::to_rational() const {
    if (!is_finite())
        throw std::domain_error("non-finite floating value");
    Rational q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
}

namespace {

long prec_of(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

template <typename Op>
Float apply(const Float& a, const Float& b, long prec, mpfr_rnd_t rnd, Op op) {
    Float r(prec);
    op(r.get(), a.get(), b.get(), rnd);
    return r;
}

Float fmin(const Float& a, const Float& b) { return mpfr_lessequal_p(a.get(), b.get()) ? a : b; }
Float fmax(const Float& a, const Float& b) { return mpfr_greaterequal_p(a.get(), b.get()) ? a : b; }

bool may_contain_integer(const Interval& t) {
    Float fl(t.precision()), cl(t.precision());
    mpfr_ceil(cl.get(), t.lo().get());
    mpfr_floor(fl.get(), t.hi().get());
    return mpfr_lessequal_p(cl.get(), fl.get());
}

} // namespace

Interval::Interval(long precision) : lo_(precision), hi_(precision) {}

Interval::Interval(Float lo, Float hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval Interval::exact(const Rational& q, long precision) {
    return {Float::from_rational(q, precision, MPFR_RNDD), Float::from_rational(q, precision, MPFR_RNDU)};
}

Interval Interval::exact(const Integer& z, long precision) { return exact(Rational(z), precision); }

Interval Interval::span(const Rational& lo, const Rational& hi, long precision) {
    return {Float::from_rational(lo, precision, MPFR_RNDD), Float::from_rational(hi, precision, MPFR_RNDU)};
}

Interval Interval::pi(long precision) {
    Float lo(precision), hi(precision);
    mpfr_const_pi(lo.get(), MPFR_RNDD);
    mpfr_const_pi(hi.get(), MPFR_RNDU);
    return {lo, hi};
}

Interval Interval::log_of(const Rational& q, long precision) {
    if (q <= 0)
        throw std::domain_error("log of a non-positive rational");
    return log(exact(q, precision + 8));
}

double Interval::mid_double() const { return midpoint().to_double(); }

Float Interval::midpoint() const {
    Float m(precision() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

double Interval::width() const {
    Float w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Interval::contains(const Rational& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Interval::intersects(const Interval& other) const {
    return mpfr_lessequal_p(lo_.get(), other.hi_.get()) && mpfr_lessequal_p(other.lo_.get(), hi_.get());
}

Interval Interval::operator-() const {
    Float lo(precision()), hi(precision());
    mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
    return {lo, hi};
}

Interval operator+(const Interval& a, const Interval& b) {
    const long p = prec_of(a, b);
    return {apply(a.lo_, b.lo_, p, MPFR_RNDD, mpfr_add), apply(a.hi_, b.hi_, p, MPFR_RNDU, mpfr_add)};
}

Interval operator-(const Interval& a, const Interval& b) {
    const long p = prec_of(a, b);
    return {apply(a.lo_, b.hi_, p, MPFR_RNDD, mpfr_sub), apply(a.hi_, b.lo_, p, MPFR_RNDU, mpfr_sub)};
}

Interval operator*(const Interval& a, const Interval& b) {
    const long p = prec_of(a, b);
    const Float* xs[2] = {&a.lo_, &a.hi_};
    const Float* ys[2] = {&b.lo_, &b.hi_};
    Float lo(p), hi(p);
    bool first = true;
    for (auto* x : xs)
        for (auto* y : ys) {
            Float d = apply(*x, *y, p, MPFR_RNDD, mpfr_mul);
            Float u = apply(*x, *y, p, MPFR_RNDU, mpfr_mul);
            if (first) {
                lo = d;
                hi = u;
                first = false;
            } else {
                lo = fmin(lo, d);
                hi = fmax(hi, u);
            }
        }
    return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
        throw std::domain_error("interval division by an interval containing zero");
    const long p = prec_of(a, b);
    const Float* xs[2] = {&a.lo_, &a.hi_};
    const Float* ys[2] = {&b.lo_, &b.hi_};
    Float lo(p), hi(p);
    bool first = true;
    for (auto* x : xs)
        for (auto* y : ys) {
            Float d = apply(*x, *y, p, MPFR_RNDD, mpfr_div);
            Float u = apply(*x, *y, p, MPFR_RNDU, mpfr_div);
            if (first) {
                lo = d;
                hi = u;
                first = false;
            } else {
                lo = fmin(lo, d);
                hi = fmax(hi, u);
            }
        }
    return {lo, hi};
}

std::string Interval::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << mpfr_get_d(lo_.get(), MPFR_RNDD) << ", " << mpfr_get_d(hi_.get(), MPFR_RNDU) << "]";
    return os.str();
}

Interval hull(const Interval& a, const Interval& b) { return {fmin(a.lo(), b.lo()), fmax(a.hi(), b.hi())}; }

Interval sqr(const Interval& a) {
    Interval m = abs(a);
    const long p = a.precision();
    return {apply(m.lo(), m.lo(), p, MPFR_RNDD, mpfr_mul), apply(m.hi(), m.hi(), p, MPFR_RNDU, mpfr_mul)};
}

Interval sqrt(const Interval& a) {
    if (a.negative())
        throw std::domain_error("sqrt of a negative interval");
    Float lo(a.precision()), hi(a.precision());
    if (a.lo().sign() > 0)
        mpfr_sqrt(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqrt(hi.get(), a.hi().get(), MPFR_RNDU);
    return {lo, hi};
}

Interval log(const Interval& a) {
    if (!a.positive())
        throw std::domain_error("log of an interval that is not positive");
    Float lo(a.precision()), hi(a.precision());
    mpfr_log(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_log(hi.get(), a.hi().get(), MPFR_RNDU);
    return {lo, hi};
}

Interval exp(const Interval& a) {
    Float lo(a.precision()), hi(a.precision());
    mpfr_exp(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_exp(hi.get(), a.hi().get(), MPFR_RNDU);
    return {lo, hi};
}

Interval abs(const Interval& a) {
    if (a.lo().sign() >= 0)
        return a;
    if (a.hi().sign() <= 0)
        return -a;
    Float hi = fmax(a.hi(), (-a).hi());
    return {Float(a.precision()), hi};
}

Interval max(const Interval& a, const Interval& b) { return {fmax(a.lo(), b.lo()), fmax(a.hi(), b.hi())}; }

Interval cos(const Interval& a) {
    const long p = a.precision();
    Interval two_pi = Interval::pi(p) * Interval::exact(Rational(2), p);
    Float lo(p), hi(p);
    Float t(p);
    mpfr_cos(lo.get(), a.lo().get(), MPFR_RNDD);
    mpfr_cos(t.get(), a.hi().get(), MPFR_RNDD);
    lo = fmin(lo, t);
    mpfr_cos(hi.get(), a.lo().get(), MPFR_RNDU);
    mpfr_cos(t.get(), a.hi().get(), MPFR_RNDU);
    hi = fmax(hi, t);
    const Interval turns = a / two_pi;
    if (may_contain_integer(turns))
        mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    if (may_contain_integer(turns - Interval::exact(Rational(1, 2), p)))
        mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    // Rounding can push the endpoints a hair outside [-1, 1]; clamp.
    if (mpfr_cmp_si(hi.get(), 1) > 0)
        mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    if (mpfr_cmp_si(lo.get(), -1) < 0)
        mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    return {lo, hi};
}

Interval sin(const Interval& a) {
    const long p = a.precision();
    return cos(a - Interval::pi(p) * Interval::exact(Rational(1, 2), p));
}

Interval atan2(const Interval& y, const Interval& x) {
    if (y.contains_zero() && x.lo().sign() <= 0)
        throw std::domain_error("argument range meets the branch cut");
    const long p = std::max(y.precision(), x.precision());
    const Float* ys[2] = {&y.lo(), &y.hi()};
    const Float* xs[2] = {&x.lo(), &x.hi()};
    Float lo(p), hi(p);
    bool first = true;
    for (auto* yy : ys)
        for (auto* xx : xs) {
            Float d(p), u(p);
            mpfr_atan2(d.get(), yy->get(), xx->get(), MPFR_RNDD);
            mpfr_atan2(u.get(), yy->get(), xx->get(), MPFR_RNDU);
            if (first) {
                lo = d;
                hi = u;
                first = false;
            } else {
                lo = fmin(lo, d);
                hi = fmax(hi, u);
            }
        }
    return {lo, hi};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    Interval den = sqr(b.re) + sqr(b.im);
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Interval abs(const ComplexInterval& z) { return sqrt(sqr(z.re) + sqr(z.im)); }

ComplexInterval polar(const Interval& r, const Interval& t) { return {r * cos(t), r * sin(t)}; }

ComplexInterval evaluate(const IntPoly& f, const ComplexInterval& z) {
    const long p = z.precision();
    ComplexInterval acc(p);
    for (int k = f.degree(); k >= 0; --k) {
        acc = acc * z;
        acc.re = acc.re + Interval::exact(f.coefficients()[static_cast<std::size_t>(k)], p);
    }
    return acc;
}

} // namespace heightforge
