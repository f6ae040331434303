#pragma once

#include "heightforge/core/int_poly.hpp"

#include <optional>
#include <vector>

namespace heightforge {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;

/// Row echelon form over Z: U * A = H with U unimodular. The first `rank`
/// rows of H are nonzero with strictly increasing pivot columns and positive
/// pivots; the remaining rows of H are zero, so the matching rows of U span
/// the integer left kernel of A.
struct EchelonForm {
    IntMatrix H;
    IntMatrix U;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

EchelonForm integer_echelon(const IntMatrix& A);

/// Basis of {e in Z^k : e * A = 0}, LLL-reduced, each row with its first
/// nonzero entry positive.
IntMatrix integer_left_kernel(const IntMatrix& A);

std::size_t rational_rank(RatMatrix rows);

/// x with x * B = w for the rows of B, when w lies in their rational span.
/// Rows need not be independent; a particular solution is returned.
std::optional<RatVector> solve_in_row_span(const RatMatrix& B, const RatVector& w);

/// Exact LLL reduction of the rows (delta = 3/4). Rows must be independent.
void lll_reduce(IntMatrix& basis);

/// Squared Gram-Schmidt norms of the rows.
std::vector<Rational> gram_schmidt_norms(const IntMatrix& basis);

/// Scales a rational matrix to an integer one by the lcm of all denominators.
IntMatrix clear_denominators(const RatMatrix& A, Integer* scale = nullptr);

} // namespace heightforge
