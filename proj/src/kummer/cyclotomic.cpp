#include "heightforge/kummer/cyclotomic.hpp"

#include "heightforge/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace heightforge {

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Quotient and remainder of a by b over Q.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        const Rational f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= f * b[i];
        trim(a);
    }
    return {q, a};
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] += a[i] * b[j];
    return r;
}

QPoly poly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

// Euler's criterion a^((p-1)/2) mod p for an odd prime p not dividing a.
long legendre(long a, long p) {
    long acc = 1, base = a % p;
    for (long ex = (p - 1) / 2; ex; ex >>= 1) {
        if (ex & 1)
            acc = acc * base % p;
        base = base * base % p;
    }
    return acc == 1 ? 1 : -1;
}

} // namespace

CyclotomicField::CyclotomicField(long conductor) : M_(conductor) {
    if (conductor < 1)
        throw InvalidInput("conductor must be positive");
    cyclo_ = cyclotomic_polynomial(static_cast<unsigned>(conductor));
    phi_ = static_cast<std::size_t>(cyclo_.degree());
}

CycElem CyclotomicField::zero() const { return CycElem{std::vector<Rational>(phi_, 0)}; }

CycElem CyclotomicField::from_rational(const Rational& q) const {
    CycElem e = zero();
    e.c[0] = q;
    return e;
}

CycElem CyclotomicField::root_of_unity(long n, long k) const {
    const long big = std::lcm(2L, M_);
    if (n < 1 || big % n != 0)
        throw InvalidInput("root of unity of order " + std::to_string(n) + " is not in Q(zeta_" + std::to_string(M_) +
                           ")");
    // exponent on zeta_big, then on zeta_M (with zeta_2M = -zeta_M^((M+1)/2) for odd M)
    long e = ((k % n) + n) % n * (big / n);
    if (big == M_)
        e %= M_;
    QPoly p;
    bool negate = false;
    long power = e;
    if (big != M_) {
        if (e % 2 == 0) {
            power = e / 2;
        } else {
            negate = true;
            power = ((e + M_) / 2) % M_;
        }
    }
    p.assign(static_cast<std::size_t>(power) + 1, 0);
    p[static_cast<std::size_t>(power)] = negate ? -1 : 1;
    QPoly mod(cyclo_.coefficients().begin(), cyclo_.coefficients().end());
    auto r = divmod(p, mod).second;
    CycElem out = zero();
    for (std::size_t i = 0; i < r.size(); ++i)
        out.c[i] = r[i];
    return out;
}

std::optional<CycElem> CyclotomicField::sqrt_positive(const Integer& d) const {
    if (d == 1)
        return one();
    // Conductor of Q(sqrt d): d if d = 1 mod 4, else 4d.
    const Integer r4 = d % 4;
    const Integer cond = r4 == 1 ? d : 4 * d;
    if (!cond.fits_slong_p() || M_ % cond.get_si() != 0)
        return std::nullopt;
    // Product of Gauss sums g_p = sum_a (a/p) zeta_p^a, with g_p^2 = p* = +-p,
    // times 1, sqrt2, i or sqrt(-2) to land on +-sqrt d; the sign is fixed numerically.
    CycElem s = one();
    Integer rest = d;
    int three_mod_four = 0;
    bool two = false;
    if (rest % 2 == 0) {
        two = true;
        rest /= 2;
    }
    for (long p = 3; rest > 1; p += 2) {
        if (rest % p != 0)
            continue;
        rest /= p;
        CycElem g = zero();
        for (long a = 1; a < p; ++a) {
            const long leg = legendre(a, p);
            g = add(g, scale(root_of_unity(p, a), Rational(leg)));
        }
        s = mul(s, g);
        if (p % 4 == 3)
            ++three_mod_four;
    }
    const bool odd = three_mod_four % 2 == 1;
    if (two) {
        // sqrt2 = zeta_8 + zeta_8^7, sqrt(-2) = zeta_8 + zeta_8^3
        s = mul(s, add(root_of_unity(8, 1), root_of_unity(8, odd ? 3 : 7)));
    } else if (odd) {
        s = mul(s, root_of_unity(4, 1));
    }
    if (evaluate(s).real() < 0)
        s = neg(s);
    return s;
}

CycElem CyclotomicField::add(const CycElem& a, const CycElem& b) const {
    CycElem r = a;
    for (std::size_t i = 0; i < phi_; ++i)
        r.c[i] += b.c[i];
    return r;
}

CycElem CyclotomicField::sub(const CycElem& a, const CycElem& b) const {
    CycElem r = a;
    for (std::size_t i = 0; i < phi_; ++i)
        r.c[i] -= b.c[i];
    return r;
}

CycElem CyclotomicField::neg(const CycElem& a) const { return scale(a, -1); }

CycElem CyclotomicField::scale(const CycElem& a, const Rational& q) const {
    CycElem r = a;
    for (auto& x : r.c)
        x *= q;
    return r;
}

CycElem CyclotomicField::mul(const CycElem& a, const CycElem& b) const {
    std::vector<Rational> prod(2 * phi_, 0);
    for (std::size_t i = 0; i < phi_; ++i)
        if (a.c[i] != 0)
            for (std::size_t j = 0; j < phi_; ++j)
                if (b.c[j] != 0)
                    prod[i + j] += a.c[i] * b.c[j];
    // x^phi = -sum_{k<phi} Phi_k x^k, Phi monic
    const auto& f = cyclo_.coefficients();
    for (std::size_t k = 2 * phi_ - 1; k >= phi_; --k) {
        if (prod[k] == 0)
            continue;
        const Rational t = prod[k];
        prod[k] = 0;
        for (std::size_t i = 0; i < phi_; ++i)
            if (f[i] != 0)
                prod[k - phi_ + i] -= t * f[i];
    }
    CycElem r = zero();
    std::copy(prod.begin(), prod.begin() + static_cast<long>(phi_), r.c.begin());
    return r;
}

CycElem CyclotomicField::inverse(const CycElem& a) const {
    if (is_zero(a))
        throw InvalidInput("division by zero in cyclotomic field");
    // Extended Euclid: s*a + t*Phi = 1
    QPoly r0(cyclo_.coefficients().begin(), cyclo_.coefficients().end()), r1 = a.c;
    trim(r1);
    QPoly s0, s1{1};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant since Phi is irreducible
    CycElem out = zero();
    for (std::size_t i = 0; i < s1.size() && i < phi_; ++i)
        out.c[i] = s1[i] / r1[0];
    return out;
}

CycElem CyclotomicField::pow(const CycElem& a, long e) const {
    CycElem base = e < 0 ? inverse(a) : a, acc = one();
    for (unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e); n; n >>= 1) {
        if (n & 1)
            acc = mul(acc, base);
        base = mul(base, base);
    }
    return acc;
}

bool CyclotomicField::is_zero(const CycElem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](const Rational& x) { return x == 0; });
}

std::optional<Rational> CyclotomicField::rational_value(const CycElem& a) const {
    for (std::size_t i = 1; i < phi_; ++i)
        if (a.c[i] != 0)
            return std::nullopt;
    return a.c[0];
}

std::complex<double> CyclotomicField::evaluate(const CycElem& a) const {
    std::complex<double> z = std::polar(1.0, 2 * M_PI / static_cast<double>(M_)), acc = 0, p = 1;
    for (std::size_t i = 0; i < phi_; ++i) {
        acc += a.c[i].get_d() * p;
        p *= z;
    }
    return acc;
}

std::string CyclotomicField::to_string(const CycElem& a) const {
    std::string out;
    const std::string z = "zeta(" + std::to_string(M_) + ")";
    for (std::size_t i = 0; i < phi_; ++i) {
        Rational c = a.c[i];
        if (c == 0)
            continue;
        const bool negative = c < 0;
        if (negative)
            c = -c;
        std::string term;
        if (i == 0)
            term = rational_string(c);
        else {
            std::string mono = i == 1 ? z : z + "^" + std::to_string(i);
            term = c == 1 ? mono : rational_string(c) + "*" + mono;
        }
        if (out.empty())
            out = negative ? "-" + term : term;
        else
            out += (negative ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

} // namespace heightforge
