#pragma once

#include "heightforge/core/int_poly.hpp"

#include <utility>
#include <vector>

namespace heightforge {

struct Factorization {
    Integer content;                               // signed, so that f = content * prod factors^mult
    std::vector<std::pair<IntPoly, int>> factors;  // primitive, positive lead, irreducible over Q
};

/// Complete factorization over the rationals: squarefree decomposition,
/// Cantor-Zassenhaus modulo a well-chosen prime, Hensel lifting and
/// Zassenhaus recombination. Deterministic.
Factorization factor(const IntPoly& f);

/// Irreducible factors of a squarefree primitive polynomial of positive degree.
std::vector<IntPoly> factor_squarefree(const IntPoly& f);

bool is_irreducible(const IntPoly& f);

} // namespace heightforge
