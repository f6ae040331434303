#pragma once

#include "heightforge/group/group.hpp"
#include "heightforge/height/height.hpp"

#include <optional>
#include <string>

namespace heightforge {

enum class SeminormMethod { automatic, lp, grid };

const char* to_string(SeminormMethod m);

struct SeminormResult {
    CertifiedInterval value;
    SeminormMethod method;
    /// Independent generators the infimum was taken over and the exponent
    /// vector of the best point found (q with h(alpha * prod gamma_i^q_i) close to the infimum).
    GroupBasis basis;
    std::vector<Rational> argmin;
};

/// inf over gamma in the divisible hull of Gamma of h(alpha * gamma).
/// Radical inputs default to the exact linear program; `grid` forces the
/// branch-and-bound search, which is the only option for other inputs.
SeminormResult gamma_seminorm(const GroupElement& alpha, const GroupBasis& gamma, double tol = default_tolerance,
                              SeminormMethod method = SeminormMethod::automatic);

/// Gap constant c for independent generators of Gamma with
/// h >= kappa on the relevant set outside the divisible hull:
///   Q = max(1, ceil(2 r max h(gamma_i) / kappa)),  c = r max h(gamma_i) / Q^(r+1).
struct GapCertificate {
    CertifiedInterval kappa;
    Integer Q;
    CertifiedInterval c;  // c.lo is the sound value
    std::vector<CertifiedInterval> generator_norms;
};

GapCertificate remond_constant(const std::vector<GroupElement>& generators, const CertifiedInterval& kappa,
                               double tol = default_tolerance);

struct GapSearchResult {
    /// Empty when every candidate lies in the divisible hull.
    std::optional<CertifiedInterval> min;
    std::size_t argmin = 0;
    std::vector<std::size_t> excluded;
    std::vector<std::optional<CertifiedInterval>> values;  // per candidate, empty when excluded
};

GapSearchResult gap_search(const std::vector<GroupElement>& candidates, const GroupBasis& gamma,
                           double tol = default_tolerance);

} // namespace heightforge
