#include "heightforge/kummer/tower.hpp"

#include "heightforge/core/errors.hpp"

#include <numeric>

namespace heightforge {

namespace {

using Exponents = std::map<Integer, Rational>;

Exponents prime_exponents(const Rational& q) { return RadicalExpr::from_rational(q).exponents(); }

Integer floor_of(const Rational& x) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

// The positive real number prod p^e_p as a base-field element, if it is one:
// it must be s * sqrt(d) with s rational and sqrt(d) in the field.
std::optional<CycElem> positive_radical_in_base(const CyclotomicField& F, const Exponents& exps) {
    Rational s = 1;
    Integer d = 1;
    for (const auto& [p, e] : exps) {
        if (e == 0)
            continue;
        if (Rational(2 * e).get_den() != 1)
            return std::nullopt;
        const Integer f = floor_of(e);
        Integer pf;
        mpz_pow_ui(pf.get_mpz_t(), p.get_mpz_t(), Integer(abs(f)).get_ui());
        s *= f >= 0 ? Rational(pf) : Rational(1) / Rational(pf);
        if (e - f != 0)
            d *= p;
    }
    auto root = F.sqrt_positive(d);
    if (!root)
        return std::nullopt;
    return F.scale(*root, s);
}

Exponents combine(const std::vector<Exponents>& vs, const std::vector<Rational>& coeffs) {
    Exponents out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (coeffs[i] != 0)
            for (const auto& [p, e] : vs[i])
                out[p] += coeffs[i] * e;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::string power_string(const Rational& base, const Rational& e) {
    std::string b = base.get_str();
    if (e == 1)
        return b;
    if (base.get_den() != 1)
        b = "(" + b + ")";
    if (e.get_den() == 1)
        return b + "^" + e.get_str();
    return b + "^(" + e.get_str() + ")";
}

// "8 = 2^3" from an integer relation prod gamma_i^e_i = 1.
std::string relation_string(const std::vector<Rational>& radicands, const IntVector& e) {
    std::string lhs, rhs;
    for (std::size_t i = radicands.size(); i-- > 0;) {
        if (e[i] >= 0)
            continue;
        lhs += (lhs.empty() ? "" : " * ") + power_string(radicands[i], Rational(-e[i]));
    }
    for (std::size_t i = 0; i < radicands.size(); ++i) {
        if (e[i] <= 0)
            continue;
        rhs += (rhs.empty() ? "" : " * ") + power_string(radicands[i], Rational(e[i]));
    }
    return (lhs.empty() ? "1" : lhs) + " = " + (rhs.empty() ? "1" : rhs);
}

} // namespace

std::size_t RadicalTower::flat(const std::vector<long>& j) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i)
        k = k * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(j[i]);
    return k;
}

std::vector<long> RadicalTower::unflat(std::size_t k) const {
    std::vector<long> j(orders_.size());
    for (std::size_t i = orders_.size(); i-- > 0;) {
        j[i] = static_cast<long>(k % static_cast<std::size_t>(orders_[i]));
        k /= static_cast<std::size_t>(orders_[i]);
    }
    return j;
}

RadicalTower RadicalTower::build(long conductor, std::vector<Rational> radicands, std::vector<long> orders) {
    if (radicands.size() != orders.size())
        throw InvalidInput("need one order per radicand");
    RadicalTower t;
    t.field_ = std::make_shared<CyclotomicField>(conductor);
    std::size_t size = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (radicands[i] <= 0)
            throw InvalidInput("radicands must be positive rationals");
        if (orders[i] < 1 || conductor % orders[i] != 0)
            throw InvalidInput("order " + std::to_string(orders[i]) + " does not divide the conductor " +
                               std::to_string(conductor));
        size *= static_cast<std::size_t>(orders[i]);
        if (size > (1u << 16))
            throw InvalidInput("tower too large");
    }
    t.radicands_ = std::move(radicands);
    t.orders_ = std::move(orders);
    const std::size_t r = t.orders_.size();
    std::vector<Exponents> vs;
    for (const auto& g : t.radicands_)
        vs.push_back(prime_exponents(g));

    auto exps_of = [&](const std::vector<long>& j) {
        std::vector<Rational> c(r);
        for (std::size_t i = 0; i < r; ++i)
            c[i] = ratio(j[i], t.orders_[i]);
        return combine(vs, c);
    };

    t.in_kernel_.assign(size, 0);
    std::vector<std::vector<long>> kernel;
    for (std::size_t k = 0; k < size; ++k) {
        const std::vector<long> j = t.unflat(k);
        const Exponents e = exps_of(j);
        const bool integral = std::all_of(e.begin(), e.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
        if (k != 0 && integral) {
            std::vector<GroupElement> gs;
            for (const auto& g : t.radicands_)
                gs.emplace_back(RadicalExpr::from_rational(g));
            auto rel = find_dependence(gs);
            std::string relation = rel ? relation_string(t.radicands_, rel->exponents) : "";
            RadicalExpr value = RadicalExpr::from_parts(0, e);
            throw Entangled("tower is entangled: " + t.monomial_string(j) + " = " + value.to_string() +
                                " lies in the base field" + (relation.empty() ? "" : " (" + relation + ")"),
                            j, relation);
        }
        if (positive_radical_in_base(*t.field_, e)) {
            t.in_kernel_[k] = 1;
            kernel.push_back(j);
        }
    }

    t.table_.assign(size, Reduction{SIZE_MAX, CycElem{}});
    for (std::size_t k = 0; k < size; ++k) {
        if (t.table_[k].index != SIZE_MAX)
            continue;
        const std::vector<long> rep = t.unflat(k);
        const std::size_t index = t.basis_.size();
        t.basis_.push_back(rep);
        for (const auto& kap : kernel) {
            std::vector<long> j(r);
            std::vector<Rational> diff(r);
            for (std::size_t i = 0; i < r; ++i) {
                j[i] = (rep[i] + kap[i]) % t.orders_[i];
                diff[i] = ratio(j[i] - rep[i], t.orders_[i]);
            }
            auto factor = positive_radical_in_base(*t.field_, combine(vs, diff));
            if (!factor)
                throw std::logic_error("absorbed monomial left the base field");
            t.table_[t.flat(j)] = Reduction{index, *factor};
        }
    }

    const std::size_t n = t.basis_.size();
    t.products_.assign(n, std::vector<Reduction>(n));
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            std::vector<long> j(r);
            for (std::size_t i = 0; i < r; ++i)
                j[i] = t.basis_[u][i] + t.basis_[v][i];
            TowerElement m = t.monomial(j);
            auto s = t.support(m);
            t.products_[u][v] = Reduction{s[0], m.coords[s[0]]};
        }
    return t;
}

std::vector<std::vector<long>> RadicalTower::absorbed() const {
    std::vector<std::vector<long>> out;
    for (std::size_t k = 1; k < in_kernel_.size(); ++k)
        if (in_kernel_[k])
            out.push_back(unflat(k));
    return out;
}

TowerElement RadicalTower::zero() const { return TowerElement{std::vector<CycElem>(basis_.size(), field_->zero())}; }

TowerElement RadicalTower::from_base(const CycElem& x) const {
    TowerElement e = zero();
    e.coords[0] = x;
    return e;
}

TowerElement RadicalTower::monomial(const std::vector<long>& j) const {
    if (j.size() != orders_.size())
        throw InvalidInput("monomial has the wrong number of exponents");
    Rational scale = 1;
    std::vector<long> red(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const long m = orders_[i];
        long q = j[i] / m, rem = j[i] % m;
        if (rem < 0) {
            rem += m;
            --q;
        }
        red[i] = rem;
        Rational g = radicands_[i];
        Integer num, den;
        mpz_pow_ui(num.get_mpz_t(), g.get_num_mpz_t(), static_cast<unsigned long>(q < 0 ? -q : q));
        mpz_pow_ui(den.get_mpz_t(), g.get_den_mpz_t(), static_cast<unsigned long>(q < 0 ? -q : q));
        scale *= q >= 0 ? ratio(num, den) : ratio(den, num);
    }
    scale.canonicalize();
    const Reduction& red_entry = table_[flat(red)];
    TowerElement e = zero();
    e.coords[red_entry.index] = field_->scale(red_entry.factor, scale);
    return e;
}

TowerElement RadicalTower::from_radical(const RadicalExpr& x) const {
    const long big = std::lcm(2L, field_->conductor());
    const Rational turn = x.turn();
    if (Rational(turn * big).get_den() != 1)
        throw UnsupportedExpression(x.to_string() + " needs roots of unity outside Q(zeta_" +
                                    std::to_string(field_->conductor()) + ")");
    const CycElem zeta = field_->root_of_unity(turn.get_den().get_si(), turn.get_num().get_si());
    std::vector<Exponents> vs;
    for (const auto& g : radicands_)
        vs.push_back(prime_exponents(g));
    const std::size_t r = orders_.size();
    for (std::size_t k = 0; k < table_.size(); ++k) {
        const std::vector<long> j = unflat(k);
        std::vector<Rational> c(r);
        for (std::size_t i = 0; i < r; ++i)
            c[i] = ratio(-j[i], orders_[i]);
        Exponents rest = combine(vs, c);
        for (const auto& [p, e] : x.exponents())
            rest[p] += e;
        if (auto b = positive_radical_in_base(*field_, rest))
            return mul(from_base(field_->mul(zeta, *b)), monomial(j));
    }
    throw UnsupportedExpression(x.to_string() + " does not lie in the tower");
}

TowerElement RadicalTower::add(const TowerElement& a, const TowerElement& b) const {
    TowerElement r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i)
        r.coords[i] = field_->add(a.coords[i], b.coords[i]);
    return r;
}

TowerElement RadicalTower::sub(const TowerElement& a, const TowerElement& b) const { return add(a, neg(b)); }

TowerElement RadicalTower::neg(const TowerElement& a) const {
    TowerElement r = a;
    for (auto& c : r.coords)
        c = field_->neg(c);
    return r;
}

TowerElement RadicalTower::mul(const TowerElement& a, const TowerElement& b) const {
    TowerElement r = zero();
    for (std::size_t u = 0; u < a.coords.size(); ++u) {
        if (field_->is_zero(a.coords[u]))
            continue;
        for (std::size_t v = 0; v < b.coords.size(); ++v) {
            if (field_->is_zero(b.coords[v]))
                continue;
            const Reduction& p = products_[u][v];
            r.coords[p.index] =
                field_->add(r.coords[p.index], field_->mul(field_->mul(a.coords[u], b.coords[v]), p.factor));
        }
    }
    return r;
}

TowerElement RadicalTower::inverse(const TowerElement& a) const {
    if (is_zero(a))
        throw InvalidInput("division by zero in radical tower");
    const std::size_t n = basis_.size();
    // Column v of A holds the coordinates of a * (basis monomial v); solve A x = 1.
    std::vector<std::vector<CycElem>> A(n, std::vector<CycElem>(n + 1, field_->zero()));
    for (std::size_t v = 0; v < n; ++v) {
        TowerElement e = zero();
        e.coords[v] = field_->one();
        TowerElement col = mul(a, e);
        for (std::size_t w = 0; w < n; ++w)
            A[w][v] = col.coords[w];
    }
    A[0][n] = field_->one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && field_->is_zero(A[piv][c]))
            ++piv;
        if (piv == n)
            throw std::logic_error("tower multiplication matrix is singular");
        std::swap(A[c], A[piv]);
        const CycElem inv = field_->inverse(A[c][c]);
        for (auto& x : A[c])
            x = field_->mul(x, inv);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == c || field_->is_zero(A[row][c]))
                continue;
            const CycElem f = A[row][c];
            for (std::size_t k = c; k <= n; ++k)
                A[row][k] = field_->sub(A[row][k], field_->mul(f, A[c][k]));
        }
    }
    TowerElement x = zero();
    for (std::size_t v = 0; v < n; ++v)
        x.coords[v] = A[v][n];
    return x;
}

TowerElement RadicalTower::pow(const TowerElement& a, long e) const {
    TowerElement base = e < 0 ? inverse(a) : a, acc = one();
    for (unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e); n; n >>= 1) {
        if (n & 1)
            acc = mul(acc, base);
        if (n > 1)
            base = mul(base, base);
    }
    return acc;
}

bool RadicalTower::is_zero(const TowerElement& a) const { return support(a).empty(); }

bool RadicalTower::equal(const TowerElement& a, const TowerElement& b) const { return is_zero(sub(a, b)); }

bool RadicalTower::in_base(const TowerElement& a) const {
    auto s = support(a);
    return s.empty() || (s.size() == 1 && s[0] == 0);
}

std::vector<std::size_t> RadicalTower::support(const TowerElement& a) const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        if (!field_->is_zero(a.coords[i]))
            s.push_back(i);
    return s;
}

bool RadicalTower::is_valid(const GaloisAutomorphism& sigma) const {
    if (sigma.t.size() != orders_.size())
        return false;
    const long M = field_->conductor();
    for (const auto& k : absorbed()) {
        long e = 0;
        for (std::size_t i = 0; i < k.size(); ++i)
            e = (e + sigma.t[i] % orders_[i] * k[i] % M * (M / orders_[i])) % M;
        if (e != 0)
            return false;
    }
    return true;
}

std::vector<GaloisAutomorphism> RadicalTower::galois_group() const {
    std::vector<GaloisAutomorphism> out;
    for (std::size_t k = 0; k < table_.size(); ++k) {
        GaloisAutomorphism s{unflat(k)};
        if (is_valid(s))
            out.push_back(std::move(s));
    }
    return out;
}

std::string RadicalTower::monomial_string(const std::vector<long>& j) const {
    std::string out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i] == 0)
            continue;
        Rational e = ratio(j[i], orders_[i]);
        out += (out.empty() ? "" : " * ") + power_string(radicands_[i], e);
    }
    return out.empty() ? "1" : out;
}

std::string RadicalTower::to_string(const TowerElement& a) const {
    std::string out;
    for (std::size_t u = 0; u < a.coords.size(); ++u) {
        if (field_->is_zero(a.coords[u]))
            continue;
        const std::string c = field_->to_string(a.coords[u]);
        const std::string m = monomial_string(basis_[u]);
        std::string term;
        if (u == 0)
            term = "(" + c + ")";
        else if (c == "1")
            term = m;
        else
            term = "(" + c + ")*" + m;
        out += (out.empty() ? "" : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

TowerElement galois_action(const RadicalTower& tower, const GaloisAutomorphism& sigma, const TowerElement& x) {
    if (!tower.is_valid(sigma))
        throw InvalidInput("multipliers do not define an automorphism of this tower");
    const long M = tower.base().conductor();
    TowerElement y = x;
    for (std::size_t u = 0; u < x.coords.size(); ++u) {
        const auto& j = tower.basis_monomials()[u];
        long e = 0;
        for (std::size_t i = 0; i < j.size(); ++i)
            e = (e + (sigma.t[i] % tower.orders()[i]) * j[i] % M * (M / tower.orders()[i])) % M;
        if (e != 0)
            y.coords[u] = tower.base().mul(x.coords[u], tower.base().zeta_power(e));
    }
    return y;
}

GaloisAutomorphism compose(const RadicalTower& tower, const GaloisAutomorphism& sigma, const GaloisAutomorphism& tau) {
    GaloisAutomorphism out{sigma.t};
    for (std::size_t i = 0; i < out.t.size(); ++i)
        out.t[i] = ((sigma.t[i] + tau.t[i]) % tower.orders()[i] + tower.orders()[i]) % tower.orders()[i];
    return out;
}

Descent descend(const TowerElement& alpha, const RadicalTower& tower, std::optional<long> n) {
    auto s = tower.support(alpha);
    if (s.empty())
        throw InvalidInput("cannot descend zero");
    if (n) {
        if (*n < 1)
            throw InvalidInput("exponent must be positive");
        if (tower.support(tower.pow(alpha, *n)).size() != 1)
            throw NotTorsion("alpha^" + std::to_string(*n) + " is not a base multiple of a monomial");
    }
    // Distinct basis monomials are eigenvectors for distinct characters of the
    // Galois group, so alpha is torsion modulo E* Gamma_sat iff it has one of them.
    if (s.size() != 1)
        throw NotTorsion("alpha spans " + std::to_string(s.size()) +
                         " basis monomials, so no power of it lies in E* times the radicand group");
    Descent d;
    const auto& j = tower.basis_monomials()[s[0]];
    for (std::size_t i = 0; i < j.size(); ++i) {
        Rational e = ratio(j[i], tower.orders()[i]);
        d.exponents.push_back(e);
    }
    d.beta = alpha.coords[s[0]];
    return d;
}

TorsionWitness torsion_free_witness(const TowerElement& alpha, const RadicalTower& tower, const GroupBasis& gamma) {
    if (gamma.size() != tower.rank())
        throw InvalidInput("group generators must be the tower radicands");
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const auto& g = gamma.generators()[i];
        if (!g.is_radical() || !g.radical().is_rational() || g.radical().rational_value() != tower.radicands()[i])
            throw InvalidInput("group generators must be the tower radicands");
    }
    TorsionWitness w;
    w.descent = descend(alpha, tower);
    const auto& j = tower.basis_monomials()[tower.support(alpha)[0]];
    std::vector<long> minus(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        minus[i] = -j[i];
    w.reduced = tower.mul(alpha, tower.monomial(minus));
    w.verified = tower.equal(w.reduced, tower.from_base(w.descent.beta));
    return w;
}

} // namespace heightforge
