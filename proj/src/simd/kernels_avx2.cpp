#include "heightforge/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define HEIGHTFORGE_HAVE_AVX2_KERNELS 1
#endif

namespace heightforge::simd::detail {

#ifdef HEIGHTFORGE_HAVE_AVX2_KERNELS

namespace {

__attribute__((target("avx2"))) inline __m256d abs_pd(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// Lanes where den == 0 get `fallback_*`; others get num / den (complex).
__attribute__((target("avx2"))) inline void cdiv(__m256d ar, __m256d ai, __m256d br, __m256d bi, __m256d fr,
                                                 __m256d fi, __m256d& qr, __m256d& qi) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(br, br), _mm256_mul_pd(bi, bi));
    const __m256d ok = _mm256_cmp_pd(den, zero, _CMP_NEQ_OQ);
    const __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), den, ok);
    const __m256d rr = _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi)), safe);
    const __m256d ri = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(ai, br), _mm256_mul_pd(ar, bi)), safe);
    qr = _mm256_blendv_pd(fr, rr, ok);
    qi = _mm256_blendv_pd(fi, ri, ok);
}

} // namespace

__attribute__((target("avx2"))) void aberth_avx2(const double* c, std::size_t degree, const double* re,
                                                 const double* im, double* dre, double* dim) {
    const std::size_t n = degree;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d zr = _mm256_loadu_pd(re + i), zi = _mm256_loadu_pd(im + i);
        __m256d pr = _mm256_set1_pd(c[degree]), pi = zero, dr = zero, di = zero;
        for (std::size_t k = degree; k-- > 0;) {
            const __m256d ndr = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(dr, zr), _mm256_mul_pd(di, zi)), pr);
            const __m256d ndi = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dr, zi), _mm256_mul_pd(di, zr)), pi);
            const __m256d npr =
                _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(pr, zr), _mm256_mul_pd(pi, zi)), _mm256_set1_pd(c[k]));
            const __m256d npi = _mm256_add_pd(_mm256_mul_pd(pr, zi), _mm256_mul_pd(pi, zr));
            dr = ndr;
            di = ndi;
            pr = npr;
            pi = npi;
        }
        __m256d nr, ni;
        cdiv(pr, pi, dr, di, zero, zero, nr, ni);

        __m256d sr = zero, si = zero;
        for (std::size_t j = 0; j < n; ++j) {
            const __m256d ar = _mm256_sub_pd(zr, _mm256_set1_pd(re[j]));
            const __m256d ai = _mm256_sub_pd(zi, _mm256_set1_pd(im[j]));
            const __m256d m = _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
            const __m256d ok = _mm256_cmp_pd(m, zero, _CMP_NEQ_OQ);
            const __m256d safe = _mm256_blendv_pd(one, m, ok);
            const __m256d tr = _mm256_div_pd(ar, safe);
            const __m256d ti = _mm256_div_pd(_mm256_sub_pd(zero, ai), safe);
            sr = _mm256_add_pd(sr, _mm256_and_pd(tr, ok));
            si = _mm256_add_pd(si, _mm256_and_pd(ti, ok));
        }
        const __m256d br = _mm256_sub_pd(one, _mm256_sub_pd(_mm256_mul_pd(nr, sr), _mm256_mul_pd(ni, si)));
        const __m256d bi = _mm256_sub_pd(zero, _mm256_add_pd(_mm256_mul_pd(nr, si), _mm256_mul_pd(ni, sr)));
        __m256d wr, wi;
        cdiv(nr, ni, br, bi, nr, ni, wr, wi);
        _mm256_storeu_pd(dre + i, wr);
        _mm256_storeu_pd(dim + i, wi);
    }
    aberth_scalar(c, degree, re, im, dre, dim, i, n);
}

__attribute__((target("avx2"))) void sunit_avx2(const double* base, const double* gens, const double* logs,
                                                std::size_t rank, std::size_t primes, const double* points,
                                                std::size_t count, double* out) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        __m256d abs_sum = zero, lin = zero;
        for (std::size_t p = 0; p < primes; ++p) {
            __m256d x = _mm256_set1_pd(base[p]);
            for (std::size_t i = 0; i < rank; ++i) {
                const __m256d q = _mm256_set_pd(points[(k + 3) * rank + i], points[(k + 2) * rank + i],
                                                points[(k + 1) * rank + i], points[k * rank + i]);
                x = _mm256_add_pd(x, _mm256_mul_pd(q, _mm256_set1_pd(gens[i * primes + p])));
            }
            const __m256d l = _mm256_set1_pd(logs[p]);
            abs_sum = _mm256_add_pd(abs_sum, _mm256_mul_pd(abs_pd(x), l));
            lin = _mm256_add_pd(lin, _mm256_mul_pd(x, l));
        }
        _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_set1_pd(0.5), _mm256_add_pd(abs_sum, abs_pd(lin))));
    }
    sunit_scalar(base, gens, logs, rank, primes, points, k, count, out);
}

#else

void aberth_avx2(const double* c, std::size_t degree, const double* re, const double* im, double* dre, double* dim) {
    aberth_scalar(c, degree, re, im, dre, dim, 0, degree);
}

void sunit_avx2(const double* base, const double* gens, const double* logs, std::size_t rank, std::size_t primes,
                const double* points, std::size_t count, double* out) {
    sunit_scalar(base, gens, logs, rank, primes, points, 0, count, out);
}

#endif

} // namespace heightforge::simd::detail
