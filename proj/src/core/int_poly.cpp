#include "heightforge/core/int_poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace heightforge {

IntPoly::IntPoly(std::vector<Integer> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coefficients) {
    coeffs_.reserve(coefficients.size());
    for (long c : coefficients)
        coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t k) {
    std::vector<Integer> v(k + 1);
    v[k] = c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::binomial(std::size_t n, const Integer& c, const Integer& d) {
    std::vector<Integer> v(n + 1);
    v[n] = c;
    v[0] -= d;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Integer IntPoly::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

Integer IntPoly::content() const {
    Integer g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero())
        return {};
    Integer g = content();
    if (lead() < 0)
        g = -g;
    std::vector<Integer> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
    if (coeffs_.size() <= 1)
        return {};
    std::vector<Integer> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::compose_power(unsigned n) const {
    if (is_zero() || n == 1)
        return *this;
    std::vector<Integer> v((coeffs_.size() - 1) * n + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i * n] = coeffs_[i];
    return IntPoly(std::move(v));
}

IntPoly IntPoly::reversed() const {
    std::vector<Integer> v(coeffs_.rbegin(), coeffs_.rend());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::negate_variable() const {
    std::vector<Integer> v = coeffs_;
    for (std::size_t i = 1; i < v.size(); i += 2)
        v[i] = -v[i];
    return IntPoly(std::move(v));
}

Rational IntPoly::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& other) {
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& other) {
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator*=(const Integer& c) {
    if (c == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& x : coeffs_)
        x *= c;
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntPoly(std::move(v));
}

std::string IntPoly::to_string(char var) const {
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        Integer mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1)
            out << mag.get_str() << '*';
        out << var;
        if (i > 1)
            out << '^' << i;
    }
    return out.str();
}

std::optional<IntPoly> exact_quotient(const IntPoly& f, const IntPoly& g) {
    if (g.is_zero())
        throw std::invalid_argument("exact_quotient: division by zero polynomial");
    if (f.is_zero())
        return IntPoly{};
    if (f.degree() < g.degree())
        return std::nullopt;
    std::vector<Integer> rem = f.coefficients();
    const auto& gc = g.coefficients();
    const std::size_t dg = gc.size() - 1;
    std::vector<Integer> quot(rem.size() - dg);
    Integer q;
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Integer& top = rem[k + dg];
        if (top == 0)
            continue;
        if (!mpz_divisible_p(top.get_mpz_t(), g.lead().get_mpz_t()))
            return std::nullopt;
        mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), g.lead().get_mpz_t());
        quot[k] = q;
        for (std::size_t j = 0; j <= dg; ++j)
            mpz_submul(rem[k + j].get_mpz_t(), q.get_mpz_t(), gc[j].get_mpz_t());
    }
    for (std::size_t i = 0; i < dg && i < rem.size(); ++i)
        if (rem[i] != 0)
            return std::nullopt;
    return IntPoly(std::move(quot));
}

IntPoly pseudo_remainder(const IntPoly& f, const IntPoly& g) {
    if (g.is_zero())
        throw std::invalid_argument("pseudo_remainder: zero divisor");
    std::vector<Integer> rem = f.coefficients();
    const auto& gc = g.coefficients();
    const std::size_t dg = gc.size() - 1;
    while (rem.size() > dg && !rem.empty()) {
        Integer top = rem.back();
        const std::size_t shift = rem.size() - 1 - dg;
        for (auto& c : rem)
            c *= g.lead();
        for (std::size_t j = 0; j <= dg; ++j)
            mpz_submul(rem[shift + j].get_mpz_t(), top.get_mpz_t(), gc[j].get_mpz_t());
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0)
            rem.pop_back();
    }
    return IntPoly(std::move(rem));
}

IntPoly gcd(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero())
        return g.primitive_part();
    if (g.is_zero())
        return f.primitive_part();
    IntPoly a = f.primitive_part();
    IntPoly b = g.primitive_part();
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.is_zero() ? IntPoly{} : r.primitive_part();
    }
    return a.primitive_part();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly p = f.primitive_part();
    if (p.degree() <= 0)
        return out;
    IntPoly a = gcd(p, p.derivative());
    IntPoly b = *exact_quotient(p, a);
    int k = 1;
    IntPoly rest = a;    // product of f_i^(i-k)
    IntPoly current = b; // product of f_i with i >= k
    while (current.degree() > 0) {
        IntPoly next = gcd(current, rest);
        IntPoly factor = *exact_quotient(current, next);
        if (factor.degree() > 0)
            out.emplace_back(factor.primitive_part(), k);
        if (next.degree() > 0)
            rest = *exact_quotient(rest, next);
        current = next;
        ++k;
    }
    return out;
}

IntPoly cyclotomic_polynomial(unsigned n) {
    if (n == 0)
        throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    // x^n - 1 divided by Phi_d for all proper divisors d.
    IntPoly result = IntPoly::binomial(n, 1, 1);
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        result = *exact_quotient(result, cyclotomic_polynomial(d));
    }
    return result;
}

std::vector<Rational> root_power_sums(const IntPoly& f, std::size_t count) {
    const int d = f.degree();
    if (d < 1)
        return std::vector<Rational>(count, Rational(0));
    const auto& a = f.coefficients();
    const Rational lead = a[static_cast<std::size_t>(d)];
    std::vector<Rational> p(count + 1);
    for (std::size_t k = 1; k <= count; ++k) {
        Rational acc = 0;
        const std::size_t lim = std::min<std::size_t>(k - 1, static_cast<std::size_t>(d));
        for (std::size_t i = 1; i <= lim; ++i)
            acc += Rational(a[static_cast<std::size_t>(d) - i]) * p[k - i];
        if (k <= static_cast<std::size_t>(d))
            acc += Rational(a[static_cast<std::size_t>(d) - k]) * static_cast<unsigned long>(k);
        p[k] = -acc / lead;
    }
    p.erase(p.begin());
    return p;
}

IntPoly from_power_sums(const std::vector<Rational>& sums) {
    const std::size_t n = sums.size();
    std::vector<Rational> e(n + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            Rational term = e[k - i] * sums[i - 1];
            if (i % 2 == 1)
                acc += term;
            else
                acc -= term;
        }
        e[k] = acc / static_cast<unsigned long>(k);
    }
    // monic coefficients: x^n - e1 x^(n-1) + e2 x^(n-2) - ...
    Integer lcm_den = 1;
    for (const auto& v : e)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> coeffs(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        Rational c = e[k] * lcm_den;
        if (k % 2 == 1)
            c = -c;
        coeffs[n - k] = c.get_num();
    }
    return IntPoly(std::move(coeffs)).primitive_part();
}

IntPoly composed_product(const IntPoly& f, const IntPoly& g) {
    const std::size_t n = static_cast<std::size_t>(f.degree()) * static_cast<std::size_t>(g.degree());
    auto pf = root_power_sums(f, n);
    auto pg = root_power_sums(g, n);
    std::vector<Rational> prod(n);
    for (std::size_t k = 0; k < n; ++k)
        prod[k] = pf[k] * pg[k];
    return from_power_sums(prod);
}

IntPoly root_power_polynomial(const IntPoly& f, long e) {
    if (e == 0)
        throw std::invalid_argument("root_power_polynomial: exponent must be nonzero");
    IntPoly base = e < 0 ? f.reversed() : f;
    const unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
    if (m == 1)
        return base.primitive_part();
    const std::size_t d = static_cast<std::size_t>(base.degree());
    auto p = root_power_sums(base, d * m);
    std::vector<Rational> q(d);
    for (std::size_t k = 1; k <= d; ++k)
        q[k - 1] = p[k * m - 1];
    return from_power_sums(q);
}

} // namespace heightforge
