#pragma once

#include "heightforge/core/int_poly.hpp"
#include "heightforge/core/interval.hpp"
#include "heightforge/core/precision.hpp"
#include "heightforge/core/roots.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace heightforge {

/// Axis-parallel rectangle with exact rational corners.
struct ComplexBox {
    Rational re_lo, re_hi, im_lo, im_hi;

    ComplexInterval to_interval(long precision) const;
    static ComplexBox from(const ComplexInterval& z);
    Rational width() const;  // max of the two side lengths
};

/// An exact algebraic number: its minimal polynomial (primitive, positive
/// leading coefficient, irreducible) and a box isolating one of its roots.
class AlgebraicNumber {
public:
    AlgebraicNumber(IntPoly minpoly, ComplexBox box, PrecisionPolicy policy = PrecisionPolicy::from_environment());

    static AlgebraicNumber rational(const Rational& q);
    /// exp(2 pi i a / M)
    static AlgebraicNumber root_of_unity(long order, long exponent);
    /// The root of `f` lying in `target(p)` for all working precisions p.
    /// `f` need not be irreducible or squarefree; the right irreducible factor
    /// is found by refining until exactly one certified root disc meets the target.
    static AlgebraicNumber select_root(const IntPoly& f, const std::function<ComplexInterval(long)>& target,
                                       const PrecisionPolicy& policy);

    const IntPoly& minimal_polynomial() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    const ComplexBox& root_box() const { return box_; }
    const PrecisionPolicy& policy() const { return policy_; }

    bool is_rational() const { return minpoly_.degree() == 1; }
    Rational rational_value() const;
    bool is_real() const;

    /// Enclosure of the number of width roughly 2^-(precision - 20) or better.
    ComplexInterval enclosure(long precision) const;
    /// Certified isolation of all conjugates with radius <= max_radius (relative).
    RootIsolation conjugates(double max_radius) const;

    std::string to_string() const;

private:
    struct Cache;

    IntPoly minpoly_;
    ComplexBox box_;
    PrecisionPolicy policy_;
    std::shared_ptr<Cache> cache_;
};

AlgebraicNumber multiply(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber inverse(const AlgebraicNumber& a);
/// a^q. For q = s/t in lowest terms the result b satisfies b^t = a^s; among
/// the t candidates the branch rule picks |a|^q exp(i q arg a) with
/// arg a in (-pi, pi], which is the positive real root when a > 0.
AlgebraicNumber power(const AlgebraicNumber& a, const Rational& q);
/// The order n when a is a root of unity.
std::optional<long> is_root_of_unity(const AlgebraicNumber& a);
/// One box per conjugate, pairwise disjoint, each of width <= tol.
std::vector<ComplexBox> complex_embeddings(const AlgebraicNumber& a, double tol);
bool equal(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Euler's totient.
long euler_phi(long n);

} // namespace heightforge
