#pragma once

#include "heightforge/core/radical.hpp"
#include "heightforge/group/group.hpp"
#include "heightforge/kummer/cyclotomic.hpp"

#include <memory>
#include <optional>

namespace heightforge {

/// Coordinates over the base field, one per basis monomial of the tower.
struct TowerElement {
    std::vector<CycElem> coords;
};

/// gamma_i^(1/m_i) -> zeta_{m_i}^{t_i} gamma_i^(1/m_i), base fixed.
struct GaloisAutomorphism {
    std::vector<long> t;
};

/// E(gamma_1^(1/m_1), ..., gamma_r^(1/m_r)) over E = Q(zeta_M), each m_i | M,
/// gamma_i positive rationals.
///
/// A monomial prod gamma_i^(j_i/m_i) that is rational for j != 0 mod m makes
/// the tower entangled and is rejected. Monomials that are irrational but
/// still lie in E (sqrt 3 in Q(zeta_12), say) are absorbed: they form a
/// subgroup K of the exponent group J = prod Z/m_i, the degree over E is
/// |J / K|, and the basis consists of the lexicographically least monomial
/// of each coset.
class RadicalTower {
public:
    static RadicalTower build(long conductor, std::vector<Rational> radicands, std::vector<long> orders);

    const CyclotomicField& base() const { return *field_; }
    const std::vector<Rational>& radicands() const { return radicands_; }
    const std::vector<long>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    /// Degree over the base field.
    std::size_t degree() const { return basis_.size(); }
    /// prod m_i
    std::size_t exponent_group_order() const { return table_.size(); }
    const std::vector<std::vector<long>>& basis_monomials() const { return basis_; }
    /// Nonzero exponent vectors whose monomial lies in the base field.
    std::vector<std::vector<long>> absorbed() const;

    TowerElement zero() const;
    TowerElement one() const { return from_base(field_->one()); }
    TowerElement from_base(const CycElem& x) const;
    /// prod gamma_i^(j_i / m_i) for arbitrary integers j_i.
    TowerElement monomial(const std::vector<long>& j) const;
    /// Throws UnsupportedExpression when x does not lie in the tower.
    TowerElement from_radical(const RadicalExpr& x) const;

    TowerElement add(const TowerElement& a, const TowerElement& b) const;
    TowerElement sub(const TowerElement& a, const TowerElement& b) const;
    TowerElement neg(const TowerElement& a) const;
    TowerElement mul(const TowerElement& a, const TowerElement& b) const;
    /// Throws InvalidInput for zero.
    TowerElement inverse(const TowerElement& a) const;
    TowerElement pow(const TowerElement& a, long e) const;

    bool is_zero(const TowerElement& a) const;
    bool equal(const TowerElement& a, const TowerElement& b) const;
    bool in_base(const TowerElement& a) const;
    /// Indices of the nonzero coordinates.
    std::vector<std::size_t> support(const TowerElement& a) const;

    /// Every automorphism of the tower over the base (characters of J trivial on K).
    std::vector<GaloisAutomorphism> galois_group() const;
    bool is_valid(const GaloisAutomorphism& sigma) const;

    std::string monomial_string(const std::vector<long>& j) const;
    std::string to_string(const TowerElement& a) const;

private:
    struct Reduction {
        std::size_t index;  // basis monomial
        CycElem factor;     // monomial(j) = factor * basis monomial
    };

    RadicalTower() = default;
    std::size_t flat(const std::vector<long>& j) const;
    std::vector<long> unflat(std::size_t k) const;

    std::shared_ptr<CyclotomicField> field_;
    std::vector<Rational> radicands_;
    std::vector<long> orders_;
    std::vector<std::vector<long>> basis_;
    std::vector<Reduction> table_;          // indexed by flat(j), 0 <= j_i < m_i
    std::vector<char> in_kernel_;           // flat(j) in K
    std::vector<std::vector<Reduction>> products_;  // basis x basis
};

TowerElement galois_action(const RadicalTower& tower, const GaloisAutomorphism& sigma, const TowerElement& x);
/// sigma after tau: multipliers add.
GaloisAutomorphism compose(const RadicalTower& tower, const GaloisAutomorphism& sigma, const GaloisAutomorphism& tau);

struct Descent {
    std::vector<Rational> exponents;  // e_i in [0, 1), multiples of 1/m_i
    CycElem beta;
};

/// alpha = beta * prod gamma_i^(e_i) with beta in the base. Throws NotTorsion
/// when alpha is not a base multiple of a single monomial (then no power of
/// alpha lies in E* times the radicand group), and InvalidInput for zero. If
/// n is given, alpha^n is computed and must be such a multiple as well.
Descent descend(const TowerElement& alpha, const RadicalTower& tower, std::optional<long> n = std::nullopt);

struct TorsionWitness {
    Descent descent;
    /// alpha * prod gamma_i^(-e_i), recomputed in the tower
    TowerElement reduced;
    bool verified = false;
};

/// Wraps descend for a group whose generators are exactly the radicands, and
/// rechecks alpha * prod gamma_i^(-e_i) = beta in the tower.
TorsionWitness torsion_free_witness(const TowerElement& alpha, const RadicalTower& tower, const GroupBasis& gamma);

} // namespace heightforge
