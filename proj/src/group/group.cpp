#include "heightforge/group/group.hpp"

#include "heightforge/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace heightforge {

namespace {

Rational frac(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational r = x - f;
    r.canonicalize();
    return r;
}

Integer max_abs(const IntVector& v) {
    Integer m = 0;
    for (const auto& x : v)
        if (abs(x) > m)
            m = abs(x);
    return m;
}

void normalize_sign(IntVector& v) {
    for (const auto& x : v) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : v)
                y = -y;
        return;
    }
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Rational turn_of(const IntVector& e, const std::vector<Rational>& turns) {
    Rational t = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        t += e[i] * turns[i];
    return frac(t);
}

// Picks the row of minimal max-norm (ties: first).
const IntVector* shortest(const IntMatrix& rows) {
    const IntVector* best = nullptr;
    for (const auto& r : rows)
        if (!best || max_abs(r) < max_abs(*best))
            best = &r;
    return best;
}

std::optional<Relation> primitive_dependence(const PrimeSupport& ps, const Integer& bound) {
    IntMatrix plain = integer_left_kernel(clear_denominators(ps.vectors));
    if (plain.empty())
        return std::nullopt;
    lll_reduce(plain);
    IntVector e = *shortest(plain);
    normalize_sign(e);
    if (max_abs(e) <= bound)
        return Relation{e, turn_of(e, ps.turns)};
    return std::nullopt;
}

std::optional<Relation> exact_dependence(const std::vector<RadicalExpr>& xs, const Integer& bound, bool clear_torsion) {
    PrimeSupport ps = prime_support(xs);
    if (!clear_torsion)
        return primitive_dependence(ps, bound);
    const std::size_t k = xs.size();
    const std::size_t P = ps.primes.size();
    // Relations with trivial torsion: e * V = 0 and e * turns in Z. The extra
    // row (0, ..., 0, 1) absorbs the integer part of the turn.
    RatMatrix aug(k + 1, RatVector(P + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t p = 0; p < P; ++p)
            aug[i][p] = ps.vectors[i][p];
        aug[i][P] = ps.turns[i];
    }
    aug[k][P] = 1;
    IntMatrix kernel = integer_left_kernel(clear_denominators(aug));
    IntMatrix projected;
    for (auto& row : kernel) {
        IntVector e(row.begin(), row.begin() + static_cast<long>(k));
        if (!is_zero(e))
            projected.push_back(std::move(e));
    }
    if (projected.empty())
        return std::nullopt;
    lll_reduce(projected);
    IntVector best = *shortest(projected);
    normalize_sign(best);
    if (max_abs(best) <= bound)
        return Relation{best, Rational(0)};

    // Fall back to the primitive relation with its torsion value.
    return primitive_dependence(ps, bound);
}

AlgebraicNumber product_of(const std::vector<AlgebraicNumber>& xs, const IntVector& e) {
    AlgebraicNumber acc = AlgebraicNumber::rational(1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!e[i].fits_slong_p())
            throw Inconclusive("exponent too large for exact verification");
        acc = multiply(acc, power(xs[i], Rational(e[i])));
    }
    return acc;
}

// The turn k/n of a root of unity of order n, read off its enclosure and verified.
Rational torsion_turn(const AlgebraicNumber& z, long order) {
    if (order <= 2)
        return order == 1 ? Rational(0) : Rational(1, 2);
    ComplexInterval e = z.enclosure(64);
    const double angle = std::atan2(e.im.mid_double(), e.re.mid_double());
    long k = std::lround(angle / (2 * M_PI) * static_cast<double>(order));
    k = ((k % order) + order) % order;
    if (!equal(z, AlgebraicNumber::root_of_unity(order, k)))
        throw std::logic_error("torsion identification failed");
    return ratio(k, order);
}

struct NormData {
    std::vector<Integer> primes;
    RatMatrix columns;  // per element: v_p(N(a)) / deg(a)
};

NormData norm_valuations(const std::vector<AlgebraicNumber>& xs) {
    NormData nd;
    std::set<Integer> primes;
    for (const auto& a : xs) {
        const IntPoly& f = a.minimal_polynomial();
        for (const Integer& c : {Integer(abs(f.coefficient(0))), f.lead()})
            if (c > 1)
                for (const auto& [p, m] : factor_integer(c))
                    primes.insert(p);
    }
    nd.primes.assign(primes.begin(), primes.end());
    for (const auto& a : xs) {
        const IntPoly& f = a.minimal_polynomial();
        RatVector col;
        for (const auto& p : nd.primes) {
            long v = 0;
            Integer c0 = abs(f.coefficient(0)), cd = f.lead();
            while (c0 != 0 && mpz_divisible_p(c0.get_mpz_t(), p.get_mpz_t())) {
                c0 /= p;
                ++v;
            }
            while (mpz_divisible_p(cd.get_mpz_t(), p.get_mpz_t())) {
                cd /= p;
                --v;
            }
            col.push_back(ratio(v, f.degree()));
        }
        nd.columns.push_back(std::move(col));
    }
    return nd;
}

std::optional<Relation> lattice_dependence(const std::vector<AlgebraicNumber>& xs, const Integer& bound,
                                           bool clear_torsion) {
    const std::size_t k = xs.size();
    for (std::size_t i = 0; i < k; ++i)
        if (auto n = is_root_of_unity(xs[i])) {
            IntVector e(k, 0);
            if (clear_torsion) {
                e[i] = *n;
                return Relation{e, Rational(0)};
            }
            e[i] = 1;
            return Relation{e, torsion_turn(xs[i], *n)};
        }
    const NormData nd = norm_valuations(xs);
    Integer exact_scale = 1;
    IntMatrix exact_cols = clear_denominators(nd.columns, &exact_scale);
    const PrecisionPolicy policy = PrecisionPolicy::from_environment();
    const Rational kb = Rational(static_cast<long>(k)) * bound;
    for (long prec = std::max(policy.initial_bits, 64L); prec <= policy.ceiling_bits; prec *= 2) {
        Integer K;
        mpz_ui_pow_ui(K.get_mpz_t(), 2, static_cast<unsigned long>(prec / 2));
        const Integer W = K * 1024;
        IntMatrix basis(k);
        std::vector<Interval> logs;
        Rational worst_error = 0;
        for (std::size_t i = 0; i < k; ++i) {
            IntVector row(k, 0);
            row[i] = 1;
            logs.push_back(log(abs(xs[i].enclosure(prec))));
            const Interval& l = logs.back();
            Rational shifted = Rational(K) * ((l.lower() + l.upper()) / 2) + Rational(1, 2);
            Integer r;
            mpz_fdiv_q(r.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
            row.push_back(r);
            worst_error = std::max<Rational>(worst_error, Rational(1, 2) + Rational(K) * (l.upper() - l.lower()));
            for (const auto& c : exact_cols.empty() ? IntVector{} : exact_cols[i])
                row.push_back(W * c);
            basis[i] = std::move(row);
        }
        lll_reduce(basis);
        // Candidates: exact columns vanish and sum e_i log|a_i| cannot be told
        // apart from zero at this precision. Only those get exact verification.
        bool saw_candidate = false;
        for (const auto& row : basis) {
            IntVector e(row.begin(), row.begin() + static_cast<long>(k));
            bool exact_zero = true;
            for (std::size_t c = k + 1; c < row.size(); ++c)
                exact_zero = exact_zero && row[c] == 0;
            if (!exact_zero || max_abs(e) > bound)
                continue;
            Interval sum = Interval::exact(Rational(0), prec);
            for (std::size_t i = 0; i < k; ++i)
                sum = sum + Interval::exact(Rational(e[i]), prec) * logs[i];
            if (!sum.contains_zero())
                continue;
            saw_candidate = true;
            try {
                AlgebraicNumber prod = product_of(xs, e);
                if (auto n = is_root_of_unity(prod)) {
                    normalize_sign(e);
                    Rational turn = torsion_turn(product_of(xs, e), *n);
                    IntVector scaled = e;
                    for (auto& x : scaled)
                        x *= *n;
                    if (clear_torsion && turn != 0 && max_abs(scaled) <= bound)
                        return Relation{scaled, Rational(0)};
                    return Relation{e, turn};
                }
            } catch (const PrecisionExhausted&) {
                // too expensive to settle exactly; treated as unverified
            }
        }
        if (!saw_candidate) {
            // Any relation within the bound would be a lattice vector of norm
            // at most sqrt(k B^2 + (k B err)^2); LLL bounds every nonzero
            // vector below by the smallest Gram-Schmidt norm.
            auto gs = gram_schmidt_norms(basis);
            Rational min_gs = *std::min_element(gs.begin(), gs.end());
            Rational reach = kb * bound + (kb * worst_error) * (kb * worst_error);
            if (min_gs > reach)
                return std::nullopt;
        }
    }
    throw Inconclusive("lattice search could not decide multiplicative dependence within the precision ceiling");
}

} // namespace

GroupElement::GroupElement(AlgebraicNumber x) : value_(RadicalExpr()) {
    if (x.is_rational() && x.rational_value() != 0)
        value_ = RadicalExpr::from_rational(x.rational_value());
    else
        value_ = std::move(x);
}

AlgebraicNumber GroupElement::algebraic() const {
    if (is_radical())
        return radical().to_algebraic();
    return std::get<AlgebraicNumber>(value_);
}

std::string GroupElement::to_string() const {
    if (is_radical())
        return radical().to_string();
    return std::get<AlgebraicNumber>(value_).to_string();
}

GroupBasis::GroupBasis(std::vector<GroupElement> generators) : gens_(std::move(generators)) {}

bool GroupBasis::all_radical() const {
    return std::all_of(gens_.begin(), gens_.end(), [](const GroupElement& g) { return g.is_radical(); });
}

PrimeSupport prime_support(const std::vector<RadicalExpr>& elements) {
    PrimeSupport ps;
    std::set<Integer> primes;
    for (const auto& x : elements)
        for (const auto& [p, e] : x.exponents())
            primes.insert(p);
    ps.primes.assign(primes.begin(), primes.end());
    for (const auto& x : elements) {
        RatVector v;
        for (const auto& p : ps.primes) {
            auto it = x.exponents().find(p);
            v.push_back(it == x.exponents().end() ? Rational(0) : it->second);
        }
        ps.vectors.push_back(std::move(v));
        ps.turns.push_back(x.turn());
    }
    return ps;
}

namespace {

std::optional<Relation> dependence(const std::vector<GroupElement>& elements, const Integer& bound, bool clear_torsion) {
    if (elements.empty())
        return std::nullopt;
    if (std::all_of(elements.begin(), elements.end(), [](const GroupElement& g) { return g.is_radical(); })) {
        std::vector<RadicalExpr> xs;
        for (const auto& g : elements)
            xs.push_back(g.radical());
        return exact_dependence(xs, bound, clear_torsion);
    }
    std::vector<AlgebraicNumber> xs;
    for (const auto& g : elements)
        xs.push_back(g.algebraic());
    return lattice_dependence(xs, bound, clear_torsion);
}

} // namespace

std::optional<Relation> find_dependence(const std::vector<GroupElement>& elements, const Integer& bound) {
    return dependence(elements, bound, true);
}

std::optional<Relation> find_relation_mod_torsion(const std::vector<GroupElement>& elements, const Integer& bound) {
    return dependence(elements, bound, false);
}

bool verify_relation(const std::vector<GroupElement>& elements, const Relation& relation) {
    if (relation.exponents.size() != elements.size() || is_zero(relation.exponents))
        return false;
    const bool radical =
        std::all_of(elements.begin(), elements.end(), [](const GroupElement& g) { return g.is_radical(); });
    if (radical) {
        RadicalExpr acc;
        for (std::size_t i = 0; i < elements.size(); ++i)
            acc = acc * elements[i].radical().pow(Rational(relation.exponents[i]));
        return acc == RadicalExpr::from_parts(relation.torsion_turn, {});
    }
    std::vector<AlgebraicNumber> xs;
    for (const auto& g : elements)
        xs.push_back(g.algebraic());
    AlgebraicNumber prod = product_of(xs, relation.exponents);
    auto n = is_root_of_unity(prod);
    if (!n || *n != relation.torsion_order())
        return false;
    return equal(prod, AlgebraicNumber::root_of_unity(relation.torsion_turn.get_den().get_si(),
                                                      relation.torsion_turn.get_num().get_si()));
}

SaturatedBasis saturate_basis(const GroupBasis& gamma) {
    SaturatedBasis out;
    std::vector<GroupElement> kept;
    const Integer unbounded = Integer(1) << 62;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        std::vector<GroupElement> trial = kept;
        trial.push_back(gamma.generators()[i]);
        std::optional<Relation> rel;
        if (gamma.all_radical()) {
            // Exact path: a relation exists iff the rank does not grow.
            rel = find_dependence(trial, unbounded);
        } else {
            rel = find_dependence(trial);
        }
        if (rel) {
            out.dropped.emplace_back(i, *rel);
        } else {
            kept.push_back(gamma.generators()[i]);
            out.kept.push_back(i);
        }
    }
    out.basis = GroupBasis(kept);
    return out;
}

std::size_t rank(const GroupBasis& gamma) {
    if (gamma.all_radical()) {
        std::vector<RadicalExpr> xs;
        for (const auto& g : gamma.generators())
            xs.push_back(g.radical());
        return rational_rank(prime_support(xs).vectors);
    }
    return saturate_basis(gamma).kept.size();
}

std::optional<HullCertificate> hull_member(const GroupElement& alpha, const GroupBasis& gamma) {
    const std::size_t r = gamma.size();
    if (alpha.is_radical() && gamma.all_radical()) {
        std::vector<RadicalExpr> xs{alpha.radical()};
        for (const auto& g : gamma.generators())
            xs.push_back(g.radical());
        PrimeSupport ps = prime_support(xs);
        const std::size_t P = ps.primes.size();
        // Lattice Gamma + Z (0, ..., 0, 1) inside Q^(P+1); alpha^n lies in Gamma
        // iff n (v_alpha, turn_alpha) lies in it.
        RatMatrix gens(r + 1, RatVector(P + 1, 0));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t p = 0; p < P; ++p)
                gens[i][p] = ps.vectors[i + 1][p];
            gens[i][P] = ps.turns[i + 1];
        }
        gens[r][P] = 1;
        RatVector w(ps.vectors[0]);
        w.push_back(ps.turns[0]);
        RatMatrix all = gens;
        all.push_back(w);
        Integer scale;
        IntMatrix scaled = clear_denominators(all, &scale);
        IntVector wi = scaled.back();
        scaled.pop_back();
        EchelonForm E = integer_echelon(scaled);
        RatMatrix B;
        for (std::size_t j = 0; j < E.rank; ++j)
            B.emplace_back(E.H[j].begin(), E.H[j].end());
        auto c = solve_in_row_span(B, RatVector(wi.begin(), wi.end()));
        if (!c)
            return std::nullopt;
        Integer n = 1;
        for (const auto& x : *c)
            mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), x.get_den_mpz_t());
        HullCertificate cert{n, std::vector<Rational>(r, 0), Rational(0)};
        for (std::size_t i = 0; i < r; ++i) {
            Rational k = 0;
            for (std::size_t j = 0; j < E.rank; ++j)
                k += (*c)[j] * E.U[j][i];
            cert.exponents[i] = k;  // k = (n k) / n
            cert.exponents[i].canonicalize();
        }
        return cert;
    }

    // Lattice path: relation between alpha and an independent subfamily of Gamma.
    SaturatedBasis sat = saturate_basis(gamma);
    std::vector<GroupElement> elems{alpha};
    for (const auto& g : sat.basis.generators())
        elems.push_back(g);
    auto rel = find_dependence(elems);
    if (!rel || rel->exponents[0] == 0)
        return std::nullopt;
    const Integer e0 = rel->exponents[0];
    const int sign = e0 > 0 ? 1 : -1;
    HullCertificate cert{abs(e0), std::vector<Rational>(r, 0), Rational(0)};
    for (std::size_t j = 0; j < sat.kept.size(); ++j) {
        Rational e(-sign * rel->exponents[j + 1], cert.n);
        e.canonicalize();
        cert.exponents[sat.kept[j]] = e;
    }
    cert.torsion_turn = frac(sign * rel->torsion_turn);
    return cert;
}

bool verify_hull(const GroupElement& alpha, const GroupBasis& gamma, const HullCertificate& cert) {
    // alpha^n * prod gamma_i^(-n e_i) = zeta
    std::vector<GroupElement> elems{alpha};
    Relation rel;
    rel.exponents.push_back(cert.n);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        Rational k = cert.exponents[i] * cert.n;
        if (k.get_den() != 1)
            return false;
        elems.push_back(gamma.generators()[i]);
        rel.exponents.push_back(-k.get_num());
    }
    rel.torsion_turn = cert.torsion_turn;
    return verify_relation(elems, rel);
}

} // namespace heightforge
