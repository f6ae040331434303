#pragma once

namespace heightforge {

/// Working precision schedule for certified numerics: start at
/// `initial_bits`, double on every failed decision, give up past
/// `ceiling_bits`.
struct PrecisionPolicy {
    long initial_bits = 64;
    long ceiling_bits = 1L << 16;

    /// Default policy with the ceiling overridden by
    /// HEIGHTFORGE_PRECISION_CEILING when that variable holds a positive integer.
    static PrecisionPolicy from_environment();
};

} // namespace heightforge
