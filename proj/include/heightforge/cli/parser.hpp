#pragma once

#include "heightforge/core/algebraic.hpp"
#include "heightforge/core/radical.hpp"
#include "heightforge/group/group.hpp"
#include "heightforge/kummer/tower.hpp"

#include <string>
#include <variant>

namespace heightforge {

/// Surface syntax for elements of the multiplicative group:
///
///   expr     := unary (('*' | '/') unary)*
///   unary    := '-' unary | power
///   power    := atom ('^' exponent)?
///   exponent := integer | '(' '-'? integer ('/' integer)? ')'
///   atom     := integer | 'zeta' '(' integer ')' | '(' expr ')' | root
///   root     := 'root' '(' '[' integer (',' integer)* ']' ',' rational ',' rational
///                          (',' rational ',' rational)? ')'
///
/// root([c0, ..., cd], lo, hi) is the root of c0 + c1 x + ... + cd x^d in the
/// real interval [lo, hi]; two more bounds give a box in the imaginary
/// direction. Expressions built from integers and zeta(M) alone become a
/// canonical RadicalExpr; anything involving root(...) becomes an AlgebraicNumber.
/// Columns count from 1; `line` is reported in errors for multi-line inputs.
GroupElement parse_expression(const std::string& text, int line = 1);

/// The same grammar, but the result must be radical.
RadicalExpr parse_radical(const std::string& text, int line = 1);

/// Elements of a radical tower: the grammar above with '+' and '-' added at
/// the lowest precedence. Rational exponents apply only to purely
/// multiplicative subexpressions, which must lie in the tower.
TowerElement parse_tower_expression(const std::string& text, const RadicalTower& tower, int line = 1);

/// Decimal ("0.75", "-2", "1e-3") or fraction ("3/4") text as an exact rational.
Rational parse_rational(const std::string& text);

} // namespace heightforge
