#include "heightforge/core/algebraic.hpp"

#include "heightforge/core/errors.hpp"
#include "heightforge/core/factor.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace heightforge {

namespace {

double radius_for(long precision) { return std::max(std::ldexp(1.0, -static_cast<int>(precision - 20)), 1e-300); }

ComplexInterval point_interval(const Rational& q, long precision) {
    return {Interval::exact(q, precision), Interval(precision)};
}

ComplexInterval ipow(ComplexInterval z, long e) {
    const long p = z.precision();
    const bool invert = e < 0;
    unsigned long n = static_cast<unsigned long>(invert ? -e : e);
    ComplexInterval acc = point_interval(Rational(1), p);
    while (n) {
        if (n & 1)
            acc = acc * z;
        n >>= 1;
        if (n)
            z = z * z;
    }
    if (invert)
        acc = point_interval(Rational(1), p) / acc;
    return acc;
}

} // namespace

ComplexInterval ComplexBox::to_interval(long precision) const {
    return {Interval::span(re_lo, re_hi, precision), Interval::span(im_lo, im_hi, precision)};
}

ComplexBox ComplexBox::from(const ComplexInterval& z) {
    return {z.re.lower(), z.re.upper(), z.im.lower(), z.im.upper()};
}

Rational ComplexBox::width() const {
    Rational a = re_hi - re_lo, b = im_hi - im_lo;
    return a > b ? a : b;
}

struct AlgebraicNumber::Cache {
    std::mutex mutex;
    std::optional<RootIsolation> iso;
    std::size_t index = 0;
};

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, ComplexBox box, PrecisionPolicy policy)
    : minpoly_(std::move(minpoly)), box_(std::move(box)), policy_(policy), cache_(std::make_shared<Cache>()) {
    if (minpoly_.degree() < 1)
        throw InvalidInput("algebraic number needs a minimal polynomial of positive degree");
    minpoly_ = minpoly_.primitive_part();
}

AlgebraicNumber AlgebraicNumber::rational(const Rational& q) {
    IntPoly f({-q.get_num(), q.get_den()});
    return AlgebraicNumber(f, ComplexBox{q, q, 0, 0});
}

AlgebraicNumber AlgebraicNumber::root_of_unity(long order, long exponent) {
    if (order <= 0)
        throw InvalidInput("root of unity order must be positive");
    long a = ((exponent % order) + order) % order;
    long g = std::gcd(a, order);
    const long n = order / g;
    a /= g;
    if (n == 1)
        return rational(1);
    if (n == 2)
        return rational(-1);
    PrecisionPolicy policy = PrecisionPolicy::from_environment();
    return select_root(
        cyclotomic_polynomial(static_cast<unsigned>(n)),
        [=](long p) {
            Interval angle = Interval::pi(p) * Interval::exact(ratio(2 * a, n), p);
            return polar(Interval::exact(Rational(1), p), angle);
        },
        policy);
}

AlgebraicNumber AlgebraicNumber::select_root(const IntPoly& f, const std::function<ComplexInterval(long)>& target,
                                             const PrecisionPolicy& policy) {
    std::vector<IntPoly> factors;
    for (auto& [g, m] : factor(f).factors)
        factors.push_back(g);
    for (long p = std::max(policy.initial_bits, 53L); p <= policy.ceiling_bits; p *= 2) {
        const ComplexInterval t = target(p);
        std::size_t hits = 0;
        const IntPoly* chosen = nullptr;
        std::optional<RootIsolation> chosen_iso;
        std::size_t chosen_index = 0;
        for (const auto& g : factors) {
            if (g.degree() == 1) {
                Rational r(-g.coefficient(0), g.coefficient(1));
                r.canonicalize();
                if (t.intersects(point_interval(r, p))) {
                    ++hits;
                    chosen = &g;
                    chosen_iso.reset();
                }
                continue;
            }
            RootIsolation iso = isolate_roots(g, radius_for(p), policy, p);
            for (std::size_t i = 0; i < iso.discs.size(); ++i)
                if (iso.discs[i].enclosure().intersects(t)) {
                    ++hits;
                    chosen = &g;
                    chosen_iso = iso;
                    chosen_index = i;
                }
        }
        if (hits == 1) {
            if (chosen->degree() == 1) {
                Rational r(-chosen->coefficient(0), chosen->coefficient(1));
                r.canonicalize();
                AlgebraicNumber out = rational(r);
                out.policy_ = policy;
                return out;
            }
            const RootDisc& d = chosen_iso->discs[chosen_index];
            AlgebraicNumber out(*chosen, ComplexBox::from(d.enclosure()), policy);
            out.cache_->iso = std::move(chosen_iso);
            out.cache_->index = chosen_index;
            return out;
        }
        if (hits == 0)
            throw InvalidInput("no root of " + f.to_string() + " in the given region");
    }
    throw PrecisionExhausted("could not single out a root of " + f.to_string() + " below the precision ceiling");
}

Rational AlgebraicNumber::rational_value() const {
    if (!is_rational())
        throw InvalidInput("not a rational number");
    Rational r(-minpoly_.coefficient(0), minpoly_.coefficient(1));
    r.canonicalize();
    return r;
}

ComplexInterval AlgebraicNumber::enclosure(long precision) const {
    if (is_rational())
        return point_interval(rational_value(), precision);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (cache_->iso && cache_->iso->precision >= precision)
        return cache_->iso->discs[cache_->index].enclosure();
    ComplexInterval reference =
        cache_->iso ? cache_->iso->discs[cache_->index].enclosure() : box_.to_interval(precision);
    for (long p = std::max(precision, policy_.initial_bits); p <= policy_.ceiling_bits; p *= 2) {
        RootIsolation iso = isolate_roots(minpoly_, radius_for(p), policy_, p);
        std::size_t hits = 0, index = 0;
        for (std::size_t i = 0; i < iso.discs.size(); ++i)
            if (iso.discs[i].enclosure().intersects(reference)) {
                ++hits;
                index = i;
            }
        if (hits == 1) {
            cache_->iso = std::move(iso);
            cache_->index = index;
            return cache_->iso->discs[index].enclosure();
        }
        if (hits == 0)
            throw std::logic_error("isolating box lost its root for " + minpoly_.to_string());
    }
    throw PrecisionExhausted("could not refine a root of " + minpoly_.to_string());
}

bool AlgebraicNumber::is_real() const {
    if (is_rational())
        return true;
    enclosure(policy_.initial_bits);
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->iso->discs[cache_->index].real;
}

RootIsolation AlgebraicNumber::conjugates(double max_radius) const {
    return isolate_roots(minpoly_, max_radius, policy_);
}

std::string AlgebraicNumber::to_string() const {
    if (is_rational())
        return rational_value().get_str();
    ComplexInterval e = enclosure(64);
    std::ostringstream os;
    os.precision(15);
    os << "root of " << minpoly_.to_string() << " near " << e.re.mid_double();
    const double im = e.im.mid_double();
    if (im != 0.0)
        os << (im < 0 ? " - " : " + ") << std::fabs(im) << "i";
    return os.str();
}

AlgebraicNumber multiply(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() && b.is_rational())
        return AlgebraicNumber::rational(a.rational_value() * b.rational_value());
    IntPoly candidate = composed_product(a.minimal_polynomial(), b.minimal_polynomial());
    return AlgebraicNumber::select_root(
        candidate, [&](long p) { return a.enclosure(p) * b.enclosure(p); }, a.policy());
}

AlgebraicNumber inverse(const AlgebraicNumber& a) {
    if (a.is_rational()) {
        if (a.rational_value() == 0)
            throw InvalidInput("inverse of zero");
        return AlgebraicNumber::rational(1 / a.rational_value());
    }
    return AlgebraicNumber::select_root(
        a.minimal_polynomial().reversed(), [&](long p) { return ipow(a.enclosure(p), -1); }, a.policy());
}

AlgebraicNumber power(const AlgebraicNumber& a, const Rational& q_in) {
    Rational q = q_in;
    q.canonicalize();
    if (q == 0)
        return AlgebraicNumber::rational(1);
    if (a.is_rational() && a.rational_value() == 0)
        throw InvalidInput("power of zero");
    const Integer s = q.get_num(), t = q.get_den();
    if (!s.fits_slong_p() || !t.fits_ulong_p())
        throw InvalidInput("exponent too large");
    const long sl = s.get_si();
    if (t == 1) {
        if (a.is_rational()) {
            Rational base = a.rational_value(), r = 1;
            mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::labs(sl)));
            mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::labs(sl)));
            r.canonicalize();
            return AlgebraicNumber::rational(sl < 0 ? 1 / r : r);
        }
        return AlgebraicNumber::select_root(
            root_power_polynomial(a.minimal_polynomial(), sl), [&](long p) { return ipow(a.enclosure(p), sl); },
            a.policy());
    }
    AlgebraicNumber base = power(a, Rational(s));
    const unsigned tu = static_cast<unsigned>(t.get_ui());
    IntPoly candidate = base.minimal_polynomial().compose_power(tu);
    const bool real = a.is_real();
    auto target = [&](long p) {
        for (long w = p;; w *= 2) {
            ComplexInterval z = a.enclosure(w);
            Interval modulus = abs(z);
            if (!modulus.positive())
                continue;
            Interval arg(w);
            if (real) {
                if (z.re.contains_zero())
                    continue;
                if (z.re.negative())
                    arg = Interval::pi(w);
            } else {
                arg = atan2(z.im, z.re);
            }
            const Interval qi = Interval::exact(q, w);
            return polar(exp(log(modulus) * qi), arg * qi);
        }
    };
    return AlgebraicNumber::select_root(candidate, target, a.policy());
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0)
                n /= p;
            result -= result / p;
        }
    if (n > 1)
        result -= result / n;
    return result;
}

std::optional<long> is_root_of_unity(const AlgebraicNumber& a) {
    const IntPoly& f = a.minimal_polynomial();
    if (f.lead() != 1 || abs(f.coefficient(0)) != 1)
        return std::nullopt;
    const long d = f.degree();
    // phi(n) >= sqrt(n / 2), so phi(n) = d forces n <= 2 d^2.
    for (long n = 1; n <= 2 * d * d; ++n) {
        if (euler_phi(n) != d)
            continue;
        if (exact_quotient(IntPoly::binomial(static_cast<std::size_t>(n), 1, 1), f))
            return n;
    }
    return std::nullopt;
}

std::vector<ComplexBox> complex_embeddings(const AlgebraicNumber& a, double tol) {
    if (!(tol > 0))
        throw InvalidInput("tolerance must be positive");
    if (a.is_rational()) {
        Rational r = a.rational_value();
        return {ComplexBox{r, r, 0, 0}};
    }
    // Cauchy bound on the root moduli.
    const IntPoly& f = a.minimal_polynomial();
    double bound = 1.0;
    for (int i = 0; i < f.degree(); ++i)
        bound = std::max(bound, 1.0 + std::fabs(Rational(f.coefficients()[static_cast<std::size_t>(i)], f.lead()).get_d()));
    RootIsolation iso = a.conjugates(tol / (4.0 * (bound + 1.0)));
    std::vector<ComplexBox> out;
    for (const auto& d : iso.discs)
        out.push_back(ComplexBox::from(d.enclosure()));
    return out;
}

bool equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!(a.minimal_polynomial() == b.minimal_polynomial()))
        return false;
    if (a.is_rational())
        return a.rational_value() == b.rational_value();
    const PrecisionPolicy& policy = a.policy();
    for (long p = policy.initial_bits; p <= policy.ceiling_bits; p *= 2) {
        ComplexInterval ea = a.enclosure(p), eb = b.enclosure(p);
        if (!ea.intersects(eb))
            return false;
        RootIsolation iso = isolate_roots(a.minimal_polynomial(), radius_for(p), policy, p);
        std::vector<std::size_t> ia, ib;
        for (std::size_t i = 0; i < iso.discs.size(); ++i) {
            ComplexInterval e = iso.discs[i].enclosure();
            if (e.intersects(ea))
                ia.push_back(i);
            if (e.intersects(eb))
                ib.push_back(i);
        }
        if (ia.size() == 1 && ib.size() == 1)
            return ia[0] == ib[0];
    }
    throw PrecisionExhausted("equality test did not resolve below the precision ceiling");
}

} // namespace heightforge
