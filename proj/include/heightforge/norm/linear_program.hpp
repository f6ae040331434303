#pragma once

#include "heightforge/group/lattice.hpp"

#include <optional>

namespace heightforge {

struct LpSolution {
    Rational value;
    RatVector x;
};

/// minimize c.x subject to A x = b, x >= 0, in exact rational arithmetic
/// (two-phase simplex, Bland's rule). Empty when infeasible; throws
/// InvalidInput when the objective is unbounded below.
std::optional<LpSolution> minimize_lp(const RatMatrix& A, const RatVector& b, const RatVector& c);

} // namespace heightforge
