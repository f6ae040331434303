#pragma once

#include "heightforge/core/algebraic.hpp"
#include "heightforge/core/radical.hpp"
#include "heightforge/group/lattice.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace heightforge {

/// A nonzero algebraic number, kept in radical form whenever possible so the
/// exact decision procedures apply.
class GroupElement {
public:
    GroupElement(RadicalExpr x) : value_(std::move(x)) {}
    GroupElement(AlgebraicNumber x);

    bool is_radical() const { return std::holds_alternative<RadicalExpr>(value_); }
    const RadicalExpr& radical() const { return std::get<RadicalExpr>(value_); }
    AlgebraicNumber algebraic() const;
    std::string to_string() const;

private:
    std::variant<RadicalExpr, AlgebraicNumber> value_;
};

/// prod elements[i]^exponents[i] = exp(2 pi i * torsion_turn).
struct Relation {
    std::vector<Integer> exponents;
    Rational torsion_turn;  // in [0, 1)

    long torsion_order() const { return torsion_turn.get_den().get_si(); }
};

/// Gamma = <generators>; the prime-support data of radical generators is cached.
class GroupBasis {
public:
    GroupBasis() = default;
    explicit GroupBasis(std::vector<GroupElement> generators);

    const std::vector<GroupElement>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    bool all_radical() const;

private:
    std::vector<GroupElement> gens_;
};

constexpr long default_exponent_bound = 1L << 20;

/// A multiplicative relation among the elements with |e_i| <= bound, or empty
/// when none exists. Exact and complete when every element is a radical
/// expression; otherwise a lattice search over log-moduli whose candidates are
/// verified exactly, throwing Inconclusive when the search cannot decide.
/// The relation prefers a trivial torsion part: the primitive kernel vector is
/// scaled by the order of its torsion value when that stays within the bound.
std::optional<Relation> find_dependence(const std::vector<GroupElement>& elements,
                                        const Integer& bound = default_exponent_bound);

/// Like find_dependence, but returns the primitive relation and reports its
/// root of unity instead of clearing it.
std::optional<Relation> find_relation_mod_torsion(const std::vector<GroupElement>& elements,
                                                  const Integer& bound = default_exponent_bound);

/// Exact re-verification of a relation.
bool verify_relation(const std::vector<GroupElement>& elements, const Relation& relation);

/// Rank of Gamma modulo torsion.
std::size_t rank(const GroupBasis& gamma);

/// alpha^n = exp(2 pi i torsion_turn) * prod gamma_i^(n e_i) with n minimal.
struct HullCertificate {
    Integer n;
    std::vector<Rational> exponents;
    Rational torsion_turn;
};

/// Membership in the divisible hull of Gamma. On the exact path n is the least
/// positive integer with alpha^n in Gamma itself, so the torsion part is 1.
std::optional<HullCertificate> hull_member(const GroupElement& alpha, const GroupBasis& gamma);

bool verify_hull(const GroupElement& alpha, const GroupBasis& gamma, const HullCertificate& cert);

struct SaturatedBasis {
    GroupBasis basis;
    std::vector<std::size_t> kept;  // indices into the original generators
    /// (dropped index, relation over kept generators followed by the dropped one)
    std::vector<std::pair<std::size_t, Relation>> dropped;
};

/// Greedy independent subfamily; every dropped generator comes with a
/// relation expressing it over the kept ones (torsion generators are dropped).
SaturatedBasis saturate_basis(const GroupBasis& gamma);

/// Rational prime-exponent vectors of radical elements over a common prime list.
struct PrimeSupport {
    std::vector<Integer> primes;
    RatMatrix vectors;
    std::vector<Rational> turns;
};
PrimeSupport prime_support(const std::vector<RadicalExpr>& elements);

} // namespace heightforge
