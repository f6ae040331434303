#include "heightforge/simd/kernels.hpp"

#include <cmath>

namespace heightforge::simd::detail {

void aberth_scalar(const double* c, std::size_t degree, const double* re, const double* im, double* dre, double* dim,
                   std::size_t begin, std::size_t end) {
    const std::size_t n = degree;
    for (std::size_t i = begin; i < end; ++i) {
        const double zr = re[i], zi = im[i];
        double pr = c[degree], pi = 0.0, dr = 0.0, di = 0.0;
        for (std::size_t k = degree; k-- > 0;) {
            const double ndr = (dr * zr - di * zi) + pr;
            const double ndi = (dr * zi + di * zr) + pi;
            const double npr = (pr * zr - pi * zi) + c[k];
            const double npi = pr * zi + pi * zr;
            dr = ndr;
            di = ndi;
            pr = npr;
            pi = npi;
        }
        double nr = 0.0, ni = 0.0;
        const double dd = dr * dr + di * di;
        if (dd != 0.0) {
            nr = (pr * dr + pi * di) / dd;
            ni = (pi * dr - pr * di) / dd;
        }
        double sr = 0.0, si = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ar = zr - re[j], ai = zi - im[j];
            const double m = ar * ar + ai * ai;
            if (m != 0.0) {
                sr += ar / m;
                si += -ai / m;
            }
        }
        const double br = 1.0 - (nr * sr - ni * si);
        const double bi = -(nr * si + ni * sr);
        const double bb = br * br + bi * bi;
        if (bb != 0.0) {
            dre[i] = (nr * br + ni * bi) / bb;
            dim[i] = (ni * br - nr * bi) / bb;
        } else {
            dre[i] = nr;
            dim[i] = ni;
        }
    }
}

void sunit_scalar(const double* base, const double* gens, const double* logs, std::size_t rank, std::size_t primes,
                  const double* points, std::size_t begin, std::size_t end, double* out) {
    for (std::size_t k = begin; k < end; ++k) {
        double abs_sum = 0.0, lin = 0.0;
        for (std::size_t p = 0; p < primes; ++p) {
            double x = base[p];
            for (std::size_t i = 0; i < rank; ++i)
                x += points[k * rank + i] * gens[i * primes + p];
            abs_sum += std::fabs(x) * logs[p];
            lin += x * logs[p];
        }
        out[k] = 0.5 * (abs_sum + std::fabs(lin));
    }
}

} // namespace heightforge::simd::detail
