#pragma once

#include "heightforge/group/group.hpp"
#include "heightforge/height/certified.hpp"
#include "heightforge/norm/quotient.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heightforge {

/// prod alphas[i]^alpha_exponents[i] * prod basis[j]^gamma_exponents[j] = exp(2 pi i torsion_turn),
/// where basis is the saturated generating set of Gamma. The alpha part is
/// then a root of unity times an element of Gamma, so it vanishes in the quotient.
struct QuotientRelation {
    std::vector<Integer> alpha_exponents;
    std::vector<Integer> gamma_exponents;
    Rational torsion_turn;
};

struct IndependenceResult {
    bool independent = false;
    /// Present when dependent.
    std::optional<QuotientRelation> relation;
    /// True when the answer came from prime-support linear algebra (radical
    /// inputs); false when from the verified lattice search.
    bool exact = false;
    GroupBasis gamma_basis;
};

/// Whether the classes of the alphas are independent in G / Gamma_div.
IndependenceResult quotient_independent(const std::vector<GroupElement>& alphas, const GroupBasis& gamma);

struct SpanRank {
    std::size_t rank = 0;
    std::vector<std::size_t> basis;  // indices into alphas
    /// One relation per index outside the basis; its alpha exponents touch only
    /// the basis indices and the dropped index itself.
    std::vector<std::pair<std::size_t, QuotientRelation>> relations;
    GroupBasis gamma_basis;
};

/// Rank of the subgroup generated by the classes of the alphas modulo
/// Gamma_div. That subgroup is finitely generated and torsion-free, hence free
/// of this rank.
SpanRank free_rank_of_span(const std::vector<GroupElement>& alphas, const GroupBasis& gamma);

/// Exact check of a relation returned by the two functions above.
bool verify_quotient_relation(const std::vector<GroupElement>& alphas, const GroupBasis& gamma_basis,
                              const QuotientRelation& relation);

std::string relation_string(const std::vector<GroupElement>& alphas, const GroupBasis& gamma_basis,
                            const QuotientRelation& relation);

enum class ProbeBucket { zero, at_least_kappa, below_kappa, undecided };

const char* to_string(ProbeBucket b);

struct ProbeEntry {
    CertifiedInterval value;
    ProbeBucket bucket;
    bool in_hull = false;
};

/// Sampled evidence about discreteness of the quotient seminorm: each value is
/// certified, but a finite sample cannot prove a gap.
struct ProbeReport {
    CertifiedInterval kappa;
    std::vector<ProbeEntry> entries;
    /// No sample fell in (0, kappa) and none was undecided.
    bool consistent = false;
    std::size_t zero_count = 0, gap_count = 0, violation_count = 0, undecided_count = 0;
};

ProbeReport discreteness_probe(const std::vector<GroupElement>& alphas, const GroupBasis& gamma,
                               const CertifiedInterval& kappa, double tol = default_tolerance);

} // namespace heightforge
