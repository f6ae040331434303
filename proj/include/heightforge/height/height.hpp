#pragma once

#include "heightforge/core/algebraic.hpp"
#include "heightforge/core/radical.hpp"
#include "heightforge/height/certified.hpp"

#include <map>
#include <string>

namespace heightforge {

constexpr double default_tolerance = 1e-12;

struct HeightOptions {
    double tol = default_tolerance;
    /// Return an exact zero for roots of unity before isolating any roots.
    bool kronecker_shortcut = true;
};

/// Absolute logarithmic Weil height
///   h(a) = (log|a_d| + sum_i log max(1, |a_i|)) / d
/// from certified root discs of the minimal polynomial. The result has width <= tol.
CertifiedInterval weil_height(const AlgebraicNumber& a, const HeightOptions& options = {});

/// Exact height of zeta * prod p^(q_p): the larger of sum_{q>0} q log p and
/// sum_{q<0} |q| log p, stored as rational coefficients of log p.
struct SunitHeight {
    std::map<Integer, Rational> log_coefficients;
    CertifiedInterval value;

    /// e.g. "log(3)", "1/2*log(2) + log(3)", "0".
    std::string symbolic() const;
};

SunitHeight sunit_height(const RadicalExpr& x, double tol = default_tolerance);

/// Encloses sum_p c_p log p with width <= tol.
CertifiedInterval log_combination(const std::map<Integer, Rational>& coefficients, double tol);

} // namespace heightforge
