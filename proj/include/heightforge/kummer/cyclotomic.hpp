#pragma once

#include "heightforge/core/int_poly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace heightforge {

/// Element of Q(zeta_M): rational coefficients of 1, zeta, ..., zeta^(phi(M)-1).
struct CycElem {
    std::vector<Rational> c;
    friend bool operator==(const CycElem& a, const CycElem& b) { return a.c == b.c; }
};

/// Q(zeta_M) with zeta = exp(2 pi i / M), arithmetic modulo the M-th
/// cyclotomic polynomial.
class CyclotomicField {
public:
    explicit CyclotomicField(long conductor);

    long conductor() const { return M_; }
    std::size_t degree() const { return phi_; }
    const IntPoly& modulus() const { return cyclo_; }

    CycElem zero() const;
    CycElem one() const { return from_rational(1); }
    CycElem from_rational(const Rational& q) const;
    /// exp(2 pi i k / n); n must divide lcm(2, M).
    CycElem root_of_unity(long n, long k) const;
    CycElem zeta_power(long k) const { return root_of_unity(M_, k); }
    /// The positive square root of a positive squarefree integer d, when it
    /// lies in the field (i.e. the conductor of Q(sqrt d) divides M).
    std::optional<CycElem> sqrt_positive(const Integer& d) const;

    CycElem add(const CycElem& a, const CycElem& b) const;
    CycElem sub(const CycElem& a, const CycElem& b) const;
    CycElem neg(const CycElem& a) const;
    CycElem mul(const CycElem& a, const CycElem& b) const;
    CycElem scale(const CycElem& a, const Rational& q) const;
    /// Throws InvalidInput for zero.
    CycElem inverse(const CycElem& a) const;
    CycElem pow(const CycElem& a, long e) const;

    bool is_zero(const CycElem& a) const;
    std::optional<Rational> rational_value(const CycElem& a) const;
    std::complex<double> evaluate(const CycElem& a) const;
    /// e.g. "1 + zeta(12)", "-1/2*zeta(12)^3 + 7/3"
    std::string to_string(const CycElem& a) const;

private:
    long M_;
    std::size_t phi_;
    IntPoly cyclo_;
};

} // namespace heightforge
