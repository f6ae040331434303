#include "heightforge/core/roots.hpp"

#include "heightforge/core/errors.hpp"
#include "heightforge/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace heightforge {

ComplexInterval RootDisc::enclosure() const {
    const long p = radius.precision();
    Interval r{radius, radius};
    Interval c_re{re, re}, c_im{im, im};
    Interval spread = hull(-r, r);
    if (real)
        return {c_re + spread, Interval(p)};
    return {c_re + spread, c_im + spread};
}

Interval RootDisc::modulus() const {
    Interval r{radius, radius};
    Interval c = abs(ComplexInterval(Interval{re, re}, Interval{im, im}));
    Interval lo_hi = c - r;
    Float lo = lo_hi.lo();
    if (lo.sign() < 0)
        lo = Float(lo.precision());
    return {lo, (c + r).hi()};
}

namespace {

struct Point {
    Float re, im;
};

std::vector<std::complex<double>> initial_guesses(const IntPoly& f) {
    const int n = f.degree();
    // Geometric-mean radius |a0/an|^(1/n), computed in logs to avoid overflow.
    double la0 = 0.0, lan = 0.0;
    {
        long e0 = 0, en = 0;
        const double m0 = mpz_get_d_2exp(&e0, f.coefficients().front().get_mpz_t());
        const double mn = mpz_get_d_2exp(&en, f.lead().get_mpz_t());
        la0 = std::log(std::fabs(m0)) + static_cast<double>(e0) * std::log(2.0);
        lan = std::log(std::fabs(mn)) + static_cast<double>(en) * std::log(2.0);
    }
    double radius = f.coefficients().front() == 0 ? 1.0 : std::exp((la0 - lan) / n);
    if (!std::isfinite(radius) || radius == 0.0)
        radius = 1.0;
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    const double two_pi = 2.0 * M_PI;
    for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(radius, two_pi * k / n + 0.4);
    return z;
}

// Double-precision Aberth on the normalized polynomial; returns false when the
// coefficients do not fit in a double.
bool double_aberth(const IntPoly& f, std::vector<std::complex<double>>& z) {
    const std::size_t n = static_cast<std::size_t>(f.degree());
    std::vector<double> c(n + 1);
    const double lead = f.lead().get_d();
    for (std::size_t i = 0; i <= n; ++i) {
        c[i] = f.coefficients()[i].get_d() / lead;
        if (!std::isfinite(c[i]))
            return false;
    }
    std::vector<double> re(n), im(n), dre(n), dim(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = z[i].real();
        im[i] = z[i].imag();
    }
    for (int it = 0; it < 500; ++it) {
        simd::aberth_corrections(c.data(), n, re.data(), im.data(), dre.data(), dim.data());
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            re[i] -= dre[i];
            im[i] -= dim[i];
            const double scale = std::max(1.0, std::hypot(re[i], im[i]));
            worst = std::max(worst, std::hypot(dre[i], dim[i]) / scale);
        }
        if (!(worst < 1e300))
            return false;
        if (worst < 1e-14)
            break;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(re[i]) || !std::isfinite(im[i]))
            return false;
        z[i] = {re[i], im[i]};
    }
    return true;
}

// Round-to-nearest complex helpers for the MPFR Aberth iteration.
void cmul(Point& r, const Point& a, const Point& b, Float& t) {
    Float re(r.re.precision());
    mpfr_mul(re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(re.get(), re.get(), t.get(), MPFR_RNDN);
    Float im(r.re.precision());
    mpfr_mul(im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), t.get(), MPFR_RNDN);
    r.re = std::move(re);
    r.im = std::move(im);
}

// r = a / b; returns false when b == 0.
bool cdiv(Point& r, const Point& a, const Point& b, Float& t) {
    const long p = r.re.precision();
    Float den(p), re(p), im(p);
    mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
    if (mpfr_zero_p(den.get()))
        return false;
    mpfr_mul(re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), t.get(), MPFR_RNDN);
    mpfr_div(re.get(), re.get(), den.get(), MPFR_RNDN);
    mpfr_mul(im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(im.get(), im.get(), t.get(), MPFR_RNDN);
    mpfr_div(im.get(), im.get(), den.get(), MPFR_RNDN);
    r.re = std::move(re);
    r.im = std::move(im);
    return true;
}

void mp_aberth(const IntPoly& f, std::vector<Point>& z, long prec) {
    const std::size_t n = z.size();
    std::vector<Float> c;
    for (const auto& a : f.coefficients()) {
        Float v(prec);
        mpfr_set_z(v.get(), a.get_mpz_t(), MPFR_RNDN);
        c.push_back(std::move(v));
    }
    for (auto& p : z) {
        mpfr_prec_round(p.re.get(), prec, MPFR_RNDN);
        mpfr_prec_round(p.im.get(), prec, MPFR_RNDN);
    }
    Float t(prec), mag(prec), scale(prec);
    Float threshold(prec);
    mpfr_set_ui_2exp(threshold.get(), 1, -(prec - 6), MPFR_RNDN);
    for (int it = 0; it < 200; ++it) {
        bool converged = true;
        std::vector<Point> w(n, Point{Float(prec), Float(prec)});
        for (std::size_t i = 0; i < n; ++i) {
            Point pv{Float(c[n]), Float(prec)}, dv{Float(prec), Float(prec)};
            for (std::size_t k = n; k-- > 0;) {
                Point tmp{Float(prec), Float(prec)};
                cmul(tmp, dv, z[i], t);
                mpfr_add(dv.re.get(), tmp.re.get(), pv.re.get(), MPFR_RNDN);
                mpfr_add(dv.im.get(), tmp.im.get(), pv.im.get(), MPFR_RNDN);
                cmul(tmp, pv, z[i], t);
                mpfr_add(pv.re.get(), tmp.re.get(), c[k].get(), MPFR_RNDN);
                pv.im = std::move(tmp.im);
            }
            Point newton{Float(prec), Float(prec)};
            if (!cdiv(newton, pv, dv, t))
                continue;
            Point sum{Float(prec), Float(prec)};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                Point diff{Float(prec), Float(prec)};
                mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
                mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
                Point one{Float(prec), Float(prec)};
                mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                Point inv{Float(prec), Float(prec)};
                if (!cdiv(inv, one, diff, t))
                    continue;
                mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), MPFR_RNDN);
                mpfr_add(sum.im.get(), sum.im.get(), inv.im.get(), MPFR_RNDN);
            }
            Point ns{Float(prec), Float(prec)};
            cmul(ns, newton, sum, t);
            Point denom{Float(prec), Float(prec)};
            mpfr_ui_sub(denom.re.get(), 1, ns.re.get(), MPFR_RNDN);
            mpfr_neg(denom.im.get(), ns.im.get(), MPFR_RNDN);
            if (!cdiv(w[i], newton, denom, t))
                w[i] = newton;
            mpfr_hypot(mag.get(), w[i].re.get(), w[i].im.get(), MPFR_RNDN);
            mpfr_hypot(scale.get(), z[i].re.get(), z[i].im.get(), MPFR_RNDN);
            if (mpfr_cmp_ui(scale.get(), 1) < 0)
                mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
            mpfr_mul(scale.get(), scale.get(), threshold.get(), MPFR_RNDN);
            if (mpfr_greater_p(mag.get(), scale.get()))
                converged = false;
        }
        for (std::size_t i = 0; i < n; ++i) {
            mpfr_sub(z[i].re.get(), z[i].re.get(), w[i].re.get(), MPFR_RNDN);
            mpfr_sub(z[i].im.get(), z[i].im.get(), w[i].im.get(), MPFR_RNDN);
        }
        if (converged)
            break;
    }
}

Interval point(const Float& x) { return Interval(x, x); }

bool certify(const IntPoly& f, const std::vector<Point>& z, long prec, double max_radius, RootIsolation& out) {
    const std::size_t n = z.size();
    std::vector<ComplexInterval> zs;
    for (const auto& p : z)
        zs.emplace_back(point(p.re), point(p.im));
    const Interval lead = Interval::exact(f.lead(), prec);
    const Interval degree = Interval::exact(Rational(static_cast<long>(n)), prec);
    std::vector<Float> radius;
    for (std::size_t i = 0; i < n; ++i) {
        ComplexInterval value = evaluate(f, zs[i]);
        ComplexInterval den(point(Float(lead.lo())), Interval(prec));
        den.re = lead;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i)
                den = den * (zs[i] - zs[j]);
        if (den.contains_zero())
            return false;
        Interval r = abs(value / den) * degree;
        radius.push_back(r.hi());
        Interval bound = hull(Interval::exact(Rational(1), prec), abs(zs[i])) *
                         Interval::exact(Rational(max_radius), prec);
        if (mpfr_greater_p(r.hi().get(), bound.lo().get()))
            return false;
    }
    auto separated = [&](const Interval& dre, const Interval& dim, std::size_t i, std::size_t j) -> bool {
        Interval rr = point(radius[i]) + point(radius[j]);
        Interval dist = sqrt(sqr(dre) + sqr(dim));
        if (!mpfr_greater_p(dist.lo().get(), rr.hi().get()))
            return false;
        // Enclosure boxes must be disjoint too.
        return mpfr_greater_p(abs(dre).lo().get(), rr.hi().get()) != 0 ||
               mpfr_greater_p(abs(dim).lo().get(), rr.hi().get()) != 0;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!separated(zs[i].re - zs[j].re, zs[i].im - zs[j].im, i, j))
                return false;

    out.precision = prec;
    out.discs.clear();
    for (std::size_t i = 0; i < n; ++i) {
        RootDisc d{z[i].re, z[i].im, radius[i], false};
        if (!mpfr_greater_p(abs(zs[i].im).lo().get(), radius[i].get())) {
            // The disc meets the real axis; the root is real iff the mirrored
            // disc meets no other disc.
            bool alone = true;
            for (std::size_t j = 0; j < n && alone; ++j) {
                if (j == i)
                    continue;
                Interval dre = zs[i].re - zs[j].re;
                Interval dim = -zs[i].im - zs[j].im;
                Interval rr = point(radius[i]) + point(radius[j]);
                if (!mpfr_greater_p(sqrt(sqr(dre) + sqr(dim)).lo().get(), rr.hi().get()))
                    alone = false;
            }
            if (!alone)
                return false;
            d.real = true;
            d.im = Float(prec);
        }
        out.discs.push_back(std::move(d));
    }
    std::sort(out.discs.begin(), out.discs.end(), [](const RootDisc& a, const RootDisc& b) {
        int c = mpfr_cmp(a.re.get(), b.re.get());
        if (c != 0)
            return c < 0;
        return mpfr_less_p(a.im.get(), b.im.get()) != 0;
    });
    return true;
}

} // namespace

RootIsolation isolate_roots(const IntPoly& f, double max_radius, const PrecisionPolicy& policy, long min_precision) {
    const int n = f.degree();
    RootIsolation out;
    if (n < 1)
        return out;
    auto guesses = initial_guesses(f);
    auto seeds = guesses;
    if (!double_aberth(f, seeds))
        seeds = guesses;
    std::vector<Point> z;
    long prec = std::max(policy.initial_bits, min_precision);
    prec = std::max(prec, 53L);
    for (const auto& s : seeds)
        z.push_back({Float::from_double(s.real(), prec), Float::from_double(s.imag(), prec)});
    for (; prec <= policy.ceiling_bits; prec *= 2) {
        mp_aberth(f, z, prec);
        if (certify(f, z, prec, max_radius, out))
            return out;
    }
    throw PrecisionExhausted("root isolation did not certify below " + std::to_string(policy.ceiling_bits) +
                             " bits for " + f.to_string());
}

} // namespace heightforge
