#include "heightforge/freeness/freeness.hpp"

#include "heightforge/core/errors.hpp"

#include <algorithm>

namespace heightforge {

namespace {

bool all_radical(const std::vector<GroupElement>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](const GroupElement& g) { return g.is_radical(); });
}

// Relation among `alphas` followed by the generators of `basis`, reporting the
// torsion value rather than clearing it.
std::optional<QuotientRelation> quotient_relation(const std::vector<GroupElement>& alphas, const GroupBasis& basis,
                                                  bool exact) {
    std::vector<GroupElement> family = alphas;
    family.insert(family.end(), basis.generators().begin(), basis.generators().end());
    // On the exact path the search is complete, so the bound is only a guard.
    const Integer bound = exact ? Integer(1) << 62 : Integer(default_exponent_bound);
    auto rel = find_relation_mod_torsion(family, bound);
    if (!rel)
        return std::nullopt;
    QuotientRelation q;
    q.alpha_exponents.assign(rel->exponents.begin(), rel->exponents.begin() + static_cast<long>(alphas.size()));
    q.gamma_exponents.assign(rel->exponents.begin() + static_cast<long>(alphas.size()), rel->exponents.end());
    q.torsion_turn = rel->torsion_turn;
    return q;
}

std::string power_string(const GroupElement& g, const Integer& e) {
    std::string base = g.to_string();
    if (base.find_first_of(" */^") != std::string::npos || base.front() == '-')
        base = "(" + base + ")";
    if (e == 1)
        return base;
    return base + "^" + (e < 0 ? "(" + e.get_str() + ")" : e.get_str());
}

} // namespace

IndependenceResult quotient_independent(const std::vector<GroupElement>& alphas, const GroupBasis& gamma) {
    if (alphas.empty())
        throw InvalidInput("quotient_independent needs at least one element");
    IndependenceResult out;
    out.gamma_basis = saturate_basis(gamma).basis;
    out.exact = all_radical(alphas) && out.gamma_basis.all_radical();
    // The saturated generators are independent, so any relation on the
    // concatenated family has a nonzero alpha block.
    out.relation = quotient_relation(alphas, out.gamma_basis, out.exact);
    out.independent = !out.relation.has_value();
    return out;
}

SpanRank free_rank_of_span(const std::vector<GroupElement>& alphas, const GroupBasis& gamma) {
    SpanRank out;
    out.gamma_basis = saturate_basis(gamma).basis;
    const bool exact = all_radical(alphas) && out.gamma_basis.all_radical();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        std::vector<GroupElement> trial;
        for (std::size_t j : out.basis)
            trial.push_back(alphas[j]);
        trial.push_back(alphas[i]);
        auto rel = quotient_relation(trial, out.gamma_basis, exact);
        if (!rel) {
            out.basis.push_back(i);
            continue;
        }
        QuotientRelation full;
        full.alpha_exponents.assign(alphas.size(), Integer(0));
        for (std::size_t j = 0; j < out.basis.size(); ++j)
            full.alpha_exponents[out.basis[j]] = rel->alpha_exponents[j];
        full.alpha_exponents[i] = rel->alpha_exponents.back();
        full.gamma_exponents = rel->gamma_exponents;
        full.torsion_turn = rel->torsion_turn;
        out.relations.emplace_back(i, std::move(full));
    }
    out.rank = out.basis.size();
    return out;
}

bool verify_quotient_relation(const std::vector<GroupElement>& alphas, const GroupBasis& gamma_basis,
                              const QuotientRelation& relation) {
    if (relation.alpha_exponents.size() != alphas.size() || relation.gamma_exponents.size() != gamma_basis.size())
        return false;
    if (std::all_of(relation.alpha_exponents.begin(), relation.alpha_exponents.end(),
                    [](const Integer& e) { return e == 0; }))
        return false;
    std::vector<GroupElement> family = alphas;
    family.insert(family.end(), gamma_basis.generators().begin(), gamma_basis.generators().end());
    Relation r;
    r.exponents = relation.alpha_exponents;
    r.exponents.insert(r.exponents.end(), relation.gamma_exponents.begin(), relation.gamma_exponents.end());
    r.torsion_turn = relation.torsion_turn;
    return verify_relation(family, r);
}

std::string relation_string(const std::vector<GroupElement>& alphas, const GroupBasis& gamma_basis,
                            const QuotientRelation& relation) {
    std::vector<std::string> lhs, rhs;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        if (relation.alpha_exponents[i] != 0)
            lhs.push_back(power_string(alphas[i], relation.alpha_exponents[i]));
    if (relation.torsion_turn != 0)
        rhs.push_back(RadicalExpr::from_parts(relation.torsion_turn, {}).to_string());
    // Moving the Gamma part across flips its exponents.
    for (std::size_t j = 0; j < gamma_basis.size(); ++j)
        if (relation.gamma_exponents[j] != 0)
            rhs.push_back(power_string(gamma_basis.generators()[j], -relation.gamma_exponents[j]));
    auto join = [](const std::vector<std::string>& parts) {
        if (parts.empty())
            return std::string("1");
        std::string s = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i)
            s += " * " + parts[i];
        return s;
    };
    return join(lhs) + " = " + join(rhs);
}

const char* to_string(ProbeBucket b) {
    switch (b) {
    case ProbeBucket::zero: return "zero";
    case ProbeBucket::at_least_kappa: return "at_least_kappa";
    case ProbeBucket::below_kappa: return "below_kappa";
    case ProbeBucket::undecided: return "undecided";
    }
    return "?";
}

ProbeReport discreteness_probe(const std::vector<GroupElement>& alphas, const GroupBasis& gamma,
                               const CertifiedInterval& kappa, double tol) {
    if (kappa.lo <= 0)
        throw InvalidInput("kappa must be positive");
    ProbeReport report;
    report.kappa = kappa;
    for (const auto& a : alphas) {
        ProbeEntry entry;
        entry.in_hull = hull_member(a, gamma).has_value();
        if (entry.in_hull) {
            entry.value = CertifiedInterval::exact(0);
            entry.bucket = ProbeBucket::zero;
        } else {
            entry.value = gamma_seminorm(a, gamma, tol).value;
            if (entry.value.lo >= kappa.hi)
                entry.bucket = ProbeBucket::at_least_kappa;
            else if (entry.value.hi < kappa.lo && entry.value.lo > 0)
                entry.bucket = ProbeBucket::below_kappa;
            else
                entry.bucket = ProbeBucket::undecided;
        }
        switch (entry.bucket) {
        case ProbeBucket::zero: ++report.zero_count; break;
        case ProbeBucket::at_least_kappa: ++report.gap_count; break;
        case ProbeBucket::below_kappa: ++report.violation_count; break;
        case ProbeBucket::undecided: ++report.undecided_count; break;
        }
        report.entries.push_back(entry);
    }
    report.consistent = report.violation_count == 0 && report.undecided_count == 0;
    return report;
}

} // namespace heightforge
