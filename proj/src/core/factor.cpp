#include "heightforge/core/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace heightforge {
namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;

struct Zp {
    u64 p;

    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly reduce(const IntPoly& f, u64 p) {
    ModPoly out(f.coefficients().size());
    Integer r;
    const Integer mod = static_cast<unsigned long>(p);
    for (std::size_t i = 0; i < out.size(); ++i) {
        mpz_fdiv_r(r.get_mpz_t(), f.coefficients()[i].get_mpz_t(), mod.get_mpz_t());
        out[i] = r.get_ui();
    }
    trim(out);
    return out;
}

IntPoly lift_poly(const ModPoly& a) {
    std::vector<Integer> v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        v[i] = static_cast<unsigned long>(a[i]);
    return IntPoly(std::move(v));
}

ModPoly mul(const ModPoly& a, const ModPoly& b, const Zp& F) {
    if (a.empty() || b.empty())
        return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

ModPoly sub(ModPoly a, const ModPoly& b, const Zp& F) {
    if (b.size() > a.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

ModPoly add(ModPoly a, const ModPoly& b, const Zp& F) {
    if (b.size() > a.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = F.add(a[i], b[i]);
    trim(a);
    return a;
}

void divmod(const ModPoly& a, const ModPoly& b, const Zp& F, ModPoly* q, ModPoly* r) {
    if (b.empty())
        throw std::invalid_argument("divmod: zero divisor");
    ModPoly rem = a;
    const u64 inv_lead = F.inv(b.back());
    const std::size_t db = b.size() - 1;
    ModPoly quot(rem.size() > db ? rem.size() - db : 0, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        u64 c = F.mul(rem[k + db], inv_lead);
        quot[k] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            rem[k + j] = F.sub(rem[k + j], F.mul(c, b[j]));
    }
    rem.resize(std::min(rem.size(), db));
    trim(rem);
    trim(quot);
    if (q)
        *q = std::move(quot);
    if (r)
        *r = std::move(rem);
}

ModPoly rem(const ModPoly& a, const ModPoly& b, const Zp& F) {
    ModPoly r;
    divmod(a, b, F, nullptr, &r);
    return r;
}

ModPoly monic(ModPoly a, const Zp& F) {
    if (a.empty())
        return a;
    u64 inv = F.inv(a.back());
    for (auto& c : a)
        c = F.mul(c, inv);
    return a;
}

ModPoly gcd(ModPoly a, ModPoly b, const Zp& F) {
    while (!b.empty()) {
        ModPoly r = rem(a, b, F);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, F);
}

/// s, t with s*a + t*b = 1 for coprime a, b.
void ext_gcd(const ModPoly& a, const ModPoly& b, const Zp& F, ModPoly& s, ModPoly& t) {
    ModPoly r0 = a, r1 = b;
    ModPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        ModPoly q, r;
        divmod(r0, r1, F, &q, &r);
        r0 = std::move(r1);
        r1 = std::move(r);
        ModPoly s2 = sub(s0, mul(q, s1, F), F);
        ModPoly t2 = sub(t0, mul(q, t1, F), F);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1)
        throw std::logic_error("ext_gcd: inputs are not coprime");
    u64 inv = F.inv(r0[0]);
    s = s0;
    t = t0;
    for (auto& c : s)
        c = F.mul(c, inv);
    for (auto& c : t)
        c = F.mul(c, inv);
}

ModPoly powmod(ModPoly base, const Integer& e, const ModPoly& mod, const Zp& F) {
    ModPoly result{1};
    base = rem(base, mod, F);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(mul(result, result, F), mod, F);
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = rem(mul(result, base, F), mod, F);
    }
    return result;
}

ModPoly derivative(const ModPoly& a, const Zp& F) {
    if (a.size() <= 1)
        return {};
    ModPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        d[i - 1] = F.mul(a[i], i % F.p);
    trim(d);
    return d;
}

struct DistinctDegree {
    ModPoly product;
    int degree;
};

std::vector<DistinctDegree> distinct_degree(const ModPoly& f_monic, const Zp& F) {
    std::vector<DistinctDegree> out;
    ModPoly f = f_monic;
    ModPoly x{0, 1};
    ModPoly h = x;
    const Integer p = static_cast<unsigned long>(F.p);
    int i = 0;
    while (deg(f) >= 2 * (i + 1)) {
        ++i;
        h = powmod(h, p, f, F);
        ModPoly g = gcd(f, sub(h, x, F), F);
        if (deg(g) > 0) {
            out.push_back({g, i});
            ModPoly q;
            divmod(f, g, F, &q, nullptr);
            f = std::move(q);
            h = rem(h, f, F);
        }
    }
    if (deg(f) > 0)
        out.push_back({f, deg(f)});
    return out;
}

void equal_degree(const ModPoly& g, int d, const Zp& F, std::mt19937_64& rng, std::vector<ModPoly>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Integer exponent;
    mpz_ui_pow_ui(exponent.get_mpz_t(), F.p, static_cast<unsigned long>(d));
    exponent = (exponent - 1) / 2;
    std::uniform_int_distribution<u64> coef(0, F.p - 1);
    for (;;) {
        ModPoly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a)
            c = coef(rng);
        trim(a);
        if (deg(a) < 1)
            continue;
        ModPoly b = powmod(a, exponent, g, F);
        b = sub(b, ModPoly{1}, F);
        ModPoly h = gcd(g, b, F);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            ModPoly q;
            divmod(g, h, F, &q, nullptr);
            equal_degree(h, d, F, rng, out);
            equal_degree(monic(q, F), d, F, rng, out);
            return;
        }
    }
}

bool is_prime(u64 n) {
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

Integer mod_sym(const Integer& c, const Integer& P) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    if (2 * r > P)
        r -= P;
    return r;
}

IntPoly reduce_mod(const IntPoly& f, const Integer& P) {
    std::vector<Integer> v = f.coefficients();
    for (auto& c : v)
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly reduce_sym(const IntPoly& f, const Integer& P) {
    std::vector<Integer> v = f.coefficients();
    for (auto& c : v)
        c = mod_sym(c, P);
    return IntPoly(std::move(v));
}

/// Lifts f = g0 * h0 (mod p), g0 monic and coprime to h0, to a factorization modulo p^k.
std::pair<IntPoly, IntPoly> hensel_pair(const IntPoly& f, const ModPoly& g0, const ModPoly& h0, const Zp& F,
                                        unsigned k) {
    ModPoly s, t;
    ext_gcd(g0, h0, F, s, t);
    IntPoly g = lift_poly(g0);
    IntPoly h = lift_poly(h0);
    const Integer p = static_cast<unsigned long>(F.p);
    Integer pj = p;
    for (unsigned j = 1; j < k; ++j) {
        IntPoly diff = f - g * h;
        std::vector<Integer> e_coeffs = diff.coefficients();
        for (auto& c : e_coeffs)
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
        ModPoly e = reduce(IntPoly(std::move(e_coeffs)), F.p);
        ModPoly q, r;
        divmod(mul(t, e, F), g0, F, &q, &r);
        ModPoly u = add(mul(s, e, F), mul(q, h0, F), F);
        g += lift_poly(r) * pj;
        h += lift_poly(u) * pj;
        pj *= p;
        g = reduce_mod(g, pj);
        h = reduce_mod(h, pj);
    }
    return {g, h};
}

/// f = lc * prod(factors) (mod p); returns monic lifts modulo p^k.
std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& factors, const Zp& F, unsigned k,
                                 const Integer& P) {
    if (factors.size() == 1) {
        Integer inv;
        Integer lead = f.lead();
        mpz_fdiv_r(lead.get_mpz_t(), lead.get_mpz_t(), P.get_mpz_t());
        mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), P.get_mpz_t());
        return {reduce_mod(f * inv, P)};
    }
    const std::size_t half = factors.size() / 2;
    std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<ModPoly> right(factors.begin() + static_cast<long>(half), factors.end());
    ModPoly g0{1};
    for (const auto& u : left)
        g0 = mul(g0, u, F);
    ModPoly h0 = reduce(f, F.p);
    {
        ModPoly q;
        divmod(h0, g0, F, &q, nullptr);
        h0 = std::move(q);
    }
    auto [g, h] = hensel_pair(f, g0, h0, F, k);
    auto a = hensel_lift(g, left, F, k, P);
    auto b = hensel_lift(h, right, F, k, P);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void next_combination(std::vector<std::size_t>& idx, std::size_t n, bool& done) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return;
        }
    }
    done = true;
}

std::vector<IntPoly> zassenhaus(const IntPoly& f_in) {
    IntPoly f = f_in.primitive_part();
    const int n = f.degree();
    if (n <= 1)
        return {f};

    // Pick the prime giving the fewest modular factors among a handful of candidates.
    Zp best{0};
    std::vector<DistinctDegree> best_dd;
    std::size_t best_count = 0;
    // Degrees a true factor could have, intersected over all sampled primes.
    std::vector<char> possible(static_cast<std::size_t>(n + 1), 1);
    int good = 0;
    for (u64 p = 1009; good < 10; p += 2) {
        if (!is_prime(p))
            continue;
        const Integer pz = static_cast<unsigned long>(p);
        if (mpz_divisible_p(f.lead().get_mpz_t(), pz.get_mpz_t()))
            continue;
        Zp F{p};
        ModPoly fp = monic(reduce(f, p), F);
        if (deg(gcd(fp, derivative(fp, F), F)) > 0)
            continue;
        ++good;
        auto dd = distinct_degree(fp, F);
        std::size_t count = 0;
        std::vector<char> sums(static_cast<std::size_t>(n + 1), 0);
        sums[0] = 1;
        for (const auto& part : dd) {
            const int copies = deg(part.product) / part.degree;
            count += static_cast<std::size_t>(copies);
            for (int c = 0; c < copies; ++c)
                for (int s = n; s >= part.degree; --s)
                    if (sums[static_cast<std::size_t>(s - part.degree)])
                        sums[static_cast<std::size_t>(s)] = 1;
        }
        bool only_trivial = true;
        for (int s = 0; s <= n; ++s) {
            possible[static_cast<std::size_t>(s)] &= sums[static_cast<std::size_t>(s)];
            if (s > 0 && s < n && possible[static_cast<std::size_t>(s)])
                only_trivial = false;
        }
        if (only_trivial)
            return {f};
        if (best.p == 0 || count < best_count) {
            best = F;
            best_dd = std::move(dd);
            best_count = count;
        }
        if (count == 1)
            break;
    }
    if (best_count == 1)
        return {f};

    std::mt19937_64 rng(0x5eed5eedULL);
    std::vector<ModPoly> modular;
    for (const auto& part : best_dd)
        equal_degree(monic(part.product, best), part.degree, best, rng, modular);

    // Coefficient bound for factors of lc * g: 2^(n+1) * |lc| * ||f||_2.
    Integer norm2 = 0;
    for (const auto& c : f.coefficients())
        norm2 += c * c;
    Integer bound = sqrt(norm2) + 1;
    bound *= abs(f.lead());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n + 2));
    const Integer p = static_cast<unsigned long>(best.p);
    Integer P = p;
    unsigned k = 1;
    while (P <= bound) {
        P *= p;
        ++k;
    }

    std::vector<IntPoly> lifted = hensel_lift(f, modular, best, k, P);

    std::vector<IntPoly> result;
    std::vector<std::size_t> remaining(lifted.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
        remaining[i] = i;
    IntPoly g = f;
    std::size_t size = 1;
    while (2 * size <= remaining.size()) {
        bool found = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i)
            idx[i] = i;
        bool done = false;
        while (!done) {
            int total = 0;
            for (std::size_t i : idx)
                total += lifted[remaining[i]].degree();
            if (!possible[static_cast<std::size_t>(total)]) {
                next_combination(idx, remaining.size(), done);
                continue;
            }
            const Integer lc = g.lead();
            // Constant-term filter before forming the full product.
            Integer c0 = lc;
            for (std::size_t i : idx)
                c0 = mod_sym(c0 * lifted[remaining[i]].coefficient(0), P);
            const Integer g0 = g.coefficient(0) * lc;
            bool plausible = (c0 == 0) ? g0 == 0 : (g0 == 0 || mpz_divisible_p(g0.get_mpz_t(), c0.get_mpz_t()));
            if (plausible) {
                IntPoly cand = IntPoly::constant(lc);
                for (std::size_t i : idx)
                    cand = reduce_sym(cand * lifted[remaining[i]], P);
                cand = cand.primitive_part();
                if (auto q = exact_quotient(g, cand)) {
                    result.push_back(cand);
                    g = *q;
                    std::vector<std::size_t> rest;
                    for (std::size_t i = 0; i < remaining.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            rest.push_back(remaining[i]);
                    remaining = std::move(rest);
                    found = true;
                    break;
                }
            }
            next_combination(idx, remaining.size(), done);
        }
        if (!found)
            ++size;
    }
    result.push_back(g.primitive_part());
    return result;
}

bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const auto& x = a.coefficients()[static_cast<std::size_t>(i)];
        const auto& y = b.coefficients()[static_cast<std::size_t>(i)];
        if (x != y)
            return x < y;
    }
    return false;
}

} // namespace

std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
    IntPoly g = f.primitive_part();
    if (g.degree() < 1)
        throw std::invalid_argument("factor_squarefree: polynomial must have positive degree");
    std::vector<IntPoly> out;
    // Strip the factor x separately; it never survives the modular squarefree test otherwise.
    if (g.coefficient(0) == 0) {
        out.push_back(IntPoly{0, 1});
        g = *exact_quotient(g, IntPoly{0, 1});
        if (g.degree() < 1)
            return out;
    }
    auto parts = zassenhaus(g);
    out.insert(out.end(), parts.begin(), parts.end());
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

Factorization factor(const IntPoly& f) {
    if (f.is_zero())
        throw std::invalid_argument("factor: zero polynomial");
    Factorization result;
    result.content = f.content();
    if (f.lead() < 0)
        result.content = -result.content;
    if (f.degree() == 0)
        return result;
    for (auto& [part, mult] : squarefree_decomposition(f))
        for (auto& irreducible : factor_squarefree(part))
            result.factors.emplace_back(std::move(irreducible), mult);
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return result;
}

bool is_irreducible(const IntPoly& f) {
    if (f.degree() < 1)
        return false;
    auto fac = factor(f);
    return fac.factors.size() == 1 && fac.factors.front().second == 1;
}

} // namespace heightforge
