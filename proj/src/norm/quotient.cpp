#include "heightforge/norm/quotient.hpp"

#include "grid.hpp"
#include "heightforge/core/errors.hpp"
#include "heightforge/norm/linear_program.hpp"
#include "heightforge/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace heightforge {

namespace {

constexpr double unit_roundoff = 0x1p-53;

CertifiedInterval height_of(const GroupElement& g, double tol) {
    if (g.is_radical())
        return sunit_height(g.radical(), tol).value;
    return weil_height(g.algebraic(), HeightOptions{tol, true});
}

Rational ceil_of(const Rational& x) {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(c);
}

// Exponent data of alpha and the generators over a common prime list.
struct SunitData {
    std::vector<Integer> primes;
    RatVector base;
    RatMatrix gens;
};

SunitData sunit_data(const GroupElement& alpha, const GroupBasis& basis) {
    std::vector<RadicalExpr> xs{alpha.radical()};
    for (const auto& g : basis.generators())
        xs.push_back(g.radical());
    PrimeSupport ps = prime_support(xs);
    SunitData d;
    d.primes = ps.primes;
    d.base = ps.vectors[0];
    d.gens.assign(ps.vectors.begin() + 1, ps.vectors.end());
    return d;
}

// min over q of max(0, sum_p e_p l_p) + sum_p max(0, -e_p) l_p with
// e = base + q G. Variables: q+ (r), q- (r), t0, t_p (P), surplus s0, s_p (P).
LpSolution solve_sunit_lp(const SunitData& d, const RatVector& logs) {
    const std::size_t r = d.gens.size(), P = d.primes.size();
    const std::size_t n = 2 * r + 2 * (P + 1);
    const std::size_t t0 = 2 * r, s0 = t0 + P + 1;
    RatMatrix A(P + 1, RatVector(n, 0));
    RatVector b(P + 1, 0), c(n, 0);
    for (std::size_t p = 0; p <= P; ++p)
        c[t0 + p] = 1;
    // row 0: t0 - sum_i q_i (G_i . l) - s0 = base . l
    A[0][t0] = 1;
    A[0][s0] = -1;
    for (std::size_t p = 0; p < P; ++p)
        b[0] += d.base[p] * logs[p];
    for (std::size_t i = 0; i < r; ++i) {
        Rational ci = 0;
        for (std::size_t p = 0; p < P; ++p)
            ci += d.gens[i][p] * logs[p];
        A[0][i] = -ci;
        A[0][r + i] = ci;
    }
    // row p: t_p + sum_i q_i G_ip l_p - s_p = -base_p l_p
    for (std::size_t p = 0; p < P; ++p) {
        auto& row = A[p + 1];
        row[t0 + 1 + p] = 1;
        row[s0 + 1 + p] = -1;
        b[p + 1] = -d.base[p] * logs[p];
        for (std::size_t i = 0; i < r; ++i) {
            row[i] = d.gens[i][p] * logs[p];
            row[r + i] = -d.gens[i][p] * logs[p];
        }
    }
    auto sol = minimize_lp(A, b, c);
    if (!sol)
        throw std::logic_error("height linear program infeasible");
    return *sol;
}

SeminormResult lp_seminorm(const GroupElement& alpha, const GroupBasis& basis, double tol) {
    const SunitData d = sunit_data(alpha, basis);
    const std::size_t r = d.gens.size();
    const PrecisionPolicy policy = PrecisionPolicy::from_environment();
    const Rational tol_q(tol);
    for (long prec = policy.initial_bits; prec <= policy.ceiling_bits; prec *= 2) {
        // The objective is nondecreasing in every log p, so lower and upper
        // rational bounds on the logs bracket the infimum.
        RatVector lo, hi;
        for (const auto& p : d.primes) {
            Interval l = log(Interval::exact(p, prec));
            lo.push_back(l.lower());
            hi.push_back(l.upper());
        }
        LpSolution low = solve_sunit_lp(d, lo);
        LpSolution high = solve_sunit_lp(d, hi);
        if (high.value - low.value <= tol_q) {
            std::vector<Rational> q(r);
            for (std::size_t i = 0; i < r; ++i)
                q[i] = low.x[i] - low.x[r + i];
            return SeminormResult{{low.value, high.value}, SeminormMethod::lp, basis, q};
        }
    }
    throw PrecisionExhausted("quotient norm linear program did not reach the requested tolerance");
}

// S-unit objective (sum_p |x_p| L_p + |sum_p x_p L_p|) / 2 with x = base + q G.
class SunitObjective : public detail::GridObjective {
public:
    SunitObjective(const SunitData& d, bool homogeneous) : r_(d.gens.size()), P_(d.primes.size()) {
        for (std::size_t p = 0; p < P_; ++p) {
            logs_.push_back(std::log(d.primes[p].get_d()));
            base_.push_back(homogeneous ? 0.0 : d.base[p].get_d());
        }
        for (const auto& g : d.gens)
            for (const auto& x : g)
                gens_.push_back(x.get_d());
        lip_ = 0;
        for (std::size_t i = 0; i < r_; ++i) {
            double abs_sum = 0, sum = 0;
            for (std::size_t p = 0; p < P_; ++p) {
                abs_sum += std::fabs(G(i, p)) * logs_[p];
                sum += G(i, p) * logs_[p];
            }
            lip_ = std::max(lip_, (abs_sum + std::fabs(sum)) / 2 * (1 + 1e-12));
        }
        err_ = 8.0 * static_cast<double>(r_ + P_ + 8) * unit_roundoff;
    }

    std::size_t rank() const override { return r_; }
    double lipschitz() const override { return lip_; }

    void evaluate(const std::vector<double>& points, std::size_t count, std::vector<double>& value,
                  std::vector<double>& slack) override {
        value.assign(count, 0);
        slack.assign(count, 0);
        simd::sunit_height_batch(base_.data(), gens_.data(), logs_.data(), r_, P_, points.data(), count,
                                 value.data());
        for (std::size_t k = 0; k < count; ++k)
            slack[k] = err_ * magnitude(&points[k * r_], 0) + 1e-300;
    }

    double box_lower_bound(const double* c, double w, const char* active) override {
        // Termwise: each |affine| term at least its distance to zero over the box.
        double sum = 0, inf_center = 0, inf_radius = 0;
        for (std::size_t p = 0; p < P_; ++p) {
            double x = x_at(c, p), rad = 0;
            for (std::size_t i = 0; i < r_; ++i)
                if (active[i])
                    rad += std::fabs(G(i, p));
            rad *= w;
            sum += std::max(0.0, std::fabs(x) - rad) * logs_[p];
            inf_center += x * logs_[p];
        }
        for (std::size_t i = 0; i < r_; ++i) {
            if (!active[i])
                continue;
            double gi = 0;
            for (std::size_t p = 0; p < P_; ++p)
                gi += G(i, p) * logs_[p];
            inf_radius += std::fabs(gi) * w;
        }
        double best = (sum + std::max(0.0, std::fabs(inf_center) - inf_radius)) / 2;
        // Affine minorants sum_v s_v l_v / 2 for fixed signs s.
        for (const auto& [key, cut] : cuts_) {
            double v = cut.constant;
            for (std::size_t i = 0; i < r_; ++i) {
                v += cut.gradient[i] * c[i];
                if (active[i])
                    v -= std::fabs(cut.gradient[i]) * w;
            }
            best = std::max(best, v);
        }
        return best - err_ * magnitude(c, w) * 2;
    }

    void observe(const double* c) override {
        if (cuts_.size() >= 4096)
            return;
        std::vector<signed char> signs(P_ + 1);
        double total = 0;
        for (std::size_t p = 0; p < P_; ++p) {
            const double x = x_at(c, p);
            signs[p] = x < 0 ? -1 : 1;
            total += x * logs_[p];
        }
        signs[P_] = total < 0 ? -1 : 1;
        if (cuts_.count(signs))
            return;
        Cut cut{0, std::vector<double>(r_, 0)};
        for (std::size_t p = 0; p < P_; ++p) {
            const double s = (signs[p] + signs[P_]) / 2.0;
            if (s == 0)
                continue;
            cut.constant += s * base_[p] * logs_[p];
            for (std::size_t i = 0; i < r_; ++i)
                cut.gradient[i] += s * G(i, p) * logs_[p];
        }
        cuts_.emplace(std::move(signs), std::move(cut));
    }

private:
    struct Cut {
        double constant;
        std::vector<double> gradient;
    };

    double G(std::size_t i, std::size_t p) const { return gens_[i * P_ + p]; }
    double x_at(const double* q, std::size_t p) const {
        double x = base_[p];
        for (std::size_t i = 0; i < r_; ++i)
            x += q[i] * G(i, p);
        return x;
    }
    // Bound on sum_p (|base_p| + sum_i (|q_i| + w) |G_ip|) L_p, which controls rounding.
    double magnitude(const double* q, double w) const {
        double m = 0;
        for (std::size_t p = 0; p < P_; ++p) {
            double x = std::fabs(base_[p]);
            for (std::size_t i = 0; i < r_; ++i)
                x += (std::fabs(q[i]) + w) * std::fabs(G(i, p));
            m += x * logs_[p];
        }
        return 2 * m + 1;
    }

    std::size_t r_, P_;
    std::vector<double> logs_, base_, gens_;
    double lip_, err_;
    std::map<std::vector<signed char>, Cut> cuts_;
};

// h(alpha * prod gamma_i^q_i) evaluated exactly at dyadic points; splitting
// stops at a fixed depth since every halving doubles the degrees involved.
class WeilObjective : public detail::GridObjective {
public:
    WeilObjective(const GroupElement& alpha, const GroupBasis& basis, bool homogeneous, double tol, double min_width)
        : alpha_(alpha.algebraic()), homogeneous_(homogeneous), tol_(tol), min_width_(min_width) {
        for (const auto& g : basis.generators()) {
            gens_.push_back(g.algebraic());
            lip_ = std::max(lip_, height_of(g, tol).hi.get_d() * (1 + 1e-12));
        }
    }

    std::size_t rank() const override { return gens_.size(); }
    double lipschitz() const override { return lip_; }
    bool can_split(double w) const override { return w >= min_width_; }

    void evaluate(const std::vector<double>& points, std::size_t count, std::vector<double>& value,
                  std::vector<double>& slack) override {
        const std::size_t r = gens_.size();
        value.assign(count, 0);
        slack.assign(count, 0);
        for (std::size_t k = 0; k < count; ++k) {
            AlgebraicNumber x = homogeneous_ ? AlgebraicNumber::rational(1) : alpha_;
            for (std::size_t i = 0; i < r; ++i)
                if (points[k * r + i] != 0)
                    x = multiply(x, power(gens_[i], Rational(points[k * r + i])));
            CertifiedInterval h = weil_height(x, HeightOptions{tol_, true});
            value[k] = h.mid_double();
            slack[k] = h.width_double() / 2 + 4 * unit_roundoff * (1 + std::fabs(value[k]));
        }
    }

private:
    AlgebraicNumber alpha_;
    bool homogeneous_;
    double tol_, min_width_;
    std::vector<AlgebraicNumber> gens_;
    double lip_ = 0;
};

// Lower bound for h(prod gamma_i^u_i) over the cube surface |u|_inf = 1.
double cube_surface_minimum(detail::GridObjective& f0) {
    const std::size_t r = f0.rank();
    std::vector<detail::GridCell> facets;
    for (std::size_t j = 0; j < r; ++j)
        for (double s : {-1.0, 1.0}) {
            detail::GridCell c;
            c.center.assign(r, 0);
            c.center[j] = s;
            c.active.assign(r, 1);
            c.active[j] = 0;
            c.half_width = 1;
            facets.push_back(std::move(c));
        }
    auto out = detail::grid_minimize(f0, std::move(facets), 0, 0.5, 200000);
    if (!(out.lower > 0))
        throw Inconclusive("could not bound the generator heights away from zero on the unit sphere");
    return out.lower;
}

SeminormResult grid_seminorm(const GroupElement& alpha, const GroupBasis& basis, double tol) {
    const std::size_t r = basis.size();
    const bool radical = alpha.is_radical() && basis.all_radical();
    std::unique_ptr<detail::GridObjective> f, f0;
    const double h_alpha = height_of(alpha, 1e-12).hi.get_d();
    // Weil heights at non-radical points are costly: stop at eighths of the start box.
    if (radical) {
        SunitData d = sunit_data(alpha, basis);
        f = std::make_unique<SunitObjective>(d, false);
        f0 = std::make_unique<SunitObjective>(d, true);
    } else {
        f0 = std::make_unique<WeilObjective>(alpha, basis, true, 1e-12, 1.0 / 8);
    }
    // For |q|_inf > R: h(alpha gamma^q) >= mu |q|_inf - h(alpha) > h(alpha) = value at q = 0.
    const double mu = cube_surface_minimum(*f0);
    const double R = std::exp2(std::ceil(std::log2(2 * h_alpha / mu * (1 + 1e-9) + 1e-300)));
    if (!radical)
        f = std::make_unique<WeilObjective>(alpha, basis, false, std::min(tol / 8, 1e-9), R / 8);
    detail::GridCell box;
    box.center.assign(r, 0);
    box.active.assign(r, 1);
    box.half_width = std::max(R, 1.0);
    auto out = detail::grid_minimize(*f, {box}, tol / 2, 0, 2000000);

    std::vector<Rational> q;
    for (double x : out.argmin)
        q.push_back(Rational(x));
    Rational upper;
    if (radical) {
        RadicalExpr x = alpha.radical();
        for (std::size_t i = 0; i < r; ++i)
            x = x * basis.generators()[i].radical().pow(q[i]);
        upper = sunit_height(x, tol / 4).value.hi;
    } else {
        upper = Rational(out.upper);
    }
    Rational lower = std::max(Rational(0), std::min(Rational(out.lower), upper));
    if (!out.converged)
        throw Inconclusive("grid search for the quotient norm did not converge within its budget");
    if (upper - lower > Rational(tol))
        throw PrecisionExhausted("grid search cannot reach the requested tolerance in double precision");
    return SeminormResult{{lower, upper}, SeminormMethod::grid, basis, q};
}

} // namespace

const char* to_string(SeminormMethod m) {
    switch (m) {
    case SeminormMethod::lp:
        return "lp";
    case SeminormMethod::grid:
        return "grid";
    default:
        return "auto";
    }
}

SeminormResult gamma_seminorm(const GroupElement& alpha, const GroupBasis& gamma, double tol, SeminormMethod method) {
    if (!(tol > 0))
        throw InvalidInput("tolerance must be positive");
    const bool radical = alpha.is_radical() && gamma.all_radical();
    if (method == SeminormMethod::automatic)
        method = radical ? SeminormMethod::lp : SeminormMethod::grid;
    if (method == SeminormMethod::lp && !radical)
        throw InvalidInput("the linear program needs radical inputs");

    SaturatedBasis sat = saturate_basis(gamma);
    const GroupBasis& basis = sat.basis;
    const std::size_t r = basis.size();
    if (alpha.is_radical() && alpha.radical().is_torsion())
        return SeminormResult{CertifiedInterval::exact(0), method, basis, std::vector<Rational>(r, 0)};
    if (r == 0)
        return SeminormResult{height_of(alpha, tol), method, basis, {}};
    if (auto cert = hull_member(alpha, basis)) {
        std::vector<Rational> q;
        for (const auto& e : cert->exponents)
            q.push_back(-e);
        return SeminormResult{CertifiedInterval::exact(0), method, basis, q};
    }
    if (method == SeminormMethod::lp)
        return lp_seminorm(alpha, basis, tol);
    return grid_seminorm(alpha, basis, tol);
}

GapCertificate remond_constant(const std::vector<GroupElement>& generators, const CertifiedInterval& kappa,
                               double tol) {
    if (!(kappa.lo > 0))
        throw InvalidInput("kappa must be positive");
    GapCertificate g{kappa, Integer(1), kappa, {}};
    const std::size_t r = generators.size();
    if (r == 0)
        return g;
    if (rank(GroupBasis(generators)) != r)
        throw InvalidInput("generators are multiplicatively dependent");
    Rational m_lo = 0, m_hi = 0;
    for (const auto& x : generators) {
        CertifiedInterval h = height_of(x, tol);
        m_lo = std::max(m_lo, h.lo);
        m_hi = std::max(m_hi, h.hi);
        g.generator_norms.push_back(h);
    }
    const Rational rr(static_cast<long>(r));
    // A larger Q only shrinks c, so round up with the upper norm bound and the lower kappa bound.
    g.Q = std::max(Rational(1), ceil_of(2 * rr * m_hi / kappa.lo)).get_num();
    Integer qpow;
    mpz_pow_ui(qpow.get_mpz_t(), g.Q.get_mpz_t(), r + 1);
    g.c = {rr * m_lo / qpow, rr * m_hi / qpow};
    return g;
}

GapSearchResult gap_search(const std::vector<GroupElement>& candidates, const GroupBasis& gamma, double tol) {
    GapSearchResult out;
    SaturatedBasis sat = saturate_basis(gamma);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (hull_member(candidates[i], sat.basis)) {
            out.excluded.push_back(i);
            out.values.emplace_back();
            continue;
        }
        CertifiedInterval v = gamma_seminorm(candidates[i], sat.basis, tol).value;
        out.values.emplace_back(v);
        if (!out.min) {
            out.min = v;
            out.argmin = i;
        } else {
            if (v.hi < out.values[out.argmin]->hi)
                out.argmin = i;
            out.min = CertifiedInterval{std::min(out.min->lo, v.lo), std::min(out.min->hi, v.hi)};
        }
    }
    return out;
}

} // namespace heightforge
