#include "heightforge/core/precision.hpp"

#include <cstdlib>
#include <string>

namespace heightforge {

PrecisionPolicy PrecisionPolicy::from_environment() {
    PrecisionPolicy policy;
    if (const char* env = std::getenv("HEIGHTFORGE_PRECISION_CEILING")) {
        try {
            long bits = std::stol(env);
            if (bits >= 16)
                policy.ceiling_bits = bits;
        } catch (...) {
        }
    }
    if (policy.initial_bits > policy.ceiling_bits)
        policy.initial_bits = policy.ceiling_bits;
    return policy;
}

} // namespace heightforge
