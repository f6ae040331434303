#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace heightforge {

using Integer = mpz_class;
using Rational = mpq_class;

/// a/b in lowest terms (mpq_class(a, b) alone does not reduce).
inline Rational ratio(const Integer& a, const Integer& b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree order. The zero polynomial has no coefficients and degree -1.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coefficients);
    IntPoly(std::initializer_list<long> coefficients);

    static IntPoly constant(const Integer& c);
    static IntPoly monomial(const Integer& c, std::size_t k);
    /// c * x^n - d
    static IntPoly binomial(std::size_t n, const Integer& c, const Integer& d);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const Integer& lead() const { return coeffs_.back(); }
    const std::vector<Integer>& coefficients() const noexcept { return coeffs_; }
    /// Coefficient of x^i; zero beyond the degree.
    Integer coefficient(std::size_t i) const;

    Integer content() const;
    /// Divides out the content and makes the leading coefficient positive.
    IntPoly primitive_part() const;
    IntPoly derivative() const;
    /// f(x^n).
    IntPoly compose_power(unsigned n) const;
    /// x^deg f(1/x).
    IntPoly reversed() const;
    /// f(-x).
    IntPoly negate_variable() const;

    Rational evaluate(const Rational& x) const;

    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& other);
    IntPoly& operator-=(const IntPoly& other);
    IntPoly& operator*=(const Integer& c);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const Integer& c) { return a *= c; }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    /// Human-readable form, e.g. "x^2 + 2*x + 4".
    std::string to_string(char var = 'x') const;

private:
    void trim();

    std::vector<Integer> coeffs_;
};

/// Quotient f/g when g divides f in Z[x], otherwise empty.
std::optional<IntPoly> exact_quotient(const IntPoly& f, const IntPoly& g);

/// lead(g)^(deg f - deg g + 1) * f mod g.
IntPoly pseudo_remainder(const IntPoly& f, const IntPoly& g);

/// Primitive greatest common divisor with positive leading coefficient.
IntPoly gcd(const IntPoly& f, const IntPoly& g);

/// Yun decomposition of a primitive polynomial into (squarefree factor, multiplicity).
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

IntPoly cyclotomic_polynomial(unsigned n);

/// Power sums p_1..p_count of the roots (with multiplicity) of f.
std::vector<Rational> root_power_sums(const IntPoly& f, std::size_t count);

/// Primitive integer polynomial of degree sums.size() whose roots have the
/// given power sums.
IntPoly from_power_sums(const std::vector<Rational>& sums);

/// Primitive polynomial whose roots are all products a_i * b_j of roots of f
/// and g; equals Res_y(f(y), y^deg g * g(x/y)) up to a constant.
IntPoly composed_product(const IntPoly& f, const IntPoly& g);

/// Primitive polynomial whose roots are a_i^e for the roots a_i of f, e != 0.
IntPoly root_power_polynomial(const IntPoly& f, long e);

} // namespace heightforge
