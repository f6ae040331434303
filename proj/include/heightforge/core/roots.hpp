#pragma once

#include "heightforge/core/int_poly.hpp"
#include "heightforge/core/interval.hpp"
#include "heightforge/core/precision.hpp"

#include <vector>

namespace heightforge {

/// A disc that provably contains exactly one root. Real roots are detected
/// exactly and get a center on the real axis.
struct RootDisc {
    Float re, im;
    Float radius;
    bool real = false;

    /// Axis-parallel enclosure of the disc (a degenerate imaginary part for real roots).
    ComplexInterval enclosure() const;
    /// Enclosure of the modulus of the root.
    Interval modulus() const;
};

struct RootIsolation {
    long precision = 0;
    std::vector<RootDisc> discs;  // sorted by real part, then imaginary part
};

/// Certified isolation of all complex roots of a squarefree integer
/// polynomial. Each radius is at most max_radius * max(1, |center|); discs and
/// their enclosures are pairwise disjoint. Aberth iteration (double precision
/// seeds, then MPFR) followed by a Smith-disc certificate; the precision is
/// doubled until the certificate succeeds. Throws PrecisionExhausted past the
/// policy ceiling.
RootIsolation isolate_roots(const IntPoly& f, double max_radius, const PrecisionPolicy& policy,
                            long min_precision = 0);

} // namespace heightforge
