#pragma once

#include <cstddef>

namespace heightforge::simd {

enum class Level { scalar, avx2 };

/// Best level supported by the running CPU, overridable with
/// HEIGHTFORGE_SIMD=scalar|avx2 (an unsupported request falls back to scalar).
Level active_level();
const char* level_name(Level level);

/// One Aberth sweep in double precision. coeffs holds degree+1 real
/// coefficients in ascending order; (re, im) are the n = degree current
/// approximations. Writes the corrections w_i, to be subtracted from z_i.
void aberth_corrections(const double* coeffs, std::size_t degree, const double* re, const double* im, double* dre,
                        double* dim, Level level);
void aberth_corrections(const double* coeffs, std::size_t degree, const double* re, const double* im, double* dre,
                        double* dim);

/// Batch evaluation of the S-unit height objective
///   h(x) = (sum_p |x_p| L_p + |sum_p x_p L_p|) / 2,  x = base + sum_i q_i G_i
/// for `count` points q (row-major, count x rank); G is rank x primes.
void sunit_height_batch(const double* base, const double* gens, const double* logs, std::size_t rank,
                        std::size_t primes, const double* points, std::size_t count, double* out, Level level);
void sunit_height_batch(const double* base, const double* gens, const double* logs, std::size_t rank,
                        std::size_t primes, const double* points, std::size_t count, double* out);

namespace detail {
// Scalar kernels work on the index range [begin, end) so that the vector
// kernels can hand them their tails.
void aberth_scalar(const double*, std::size_t, const double*, const double*, double*, double*, std::size_t begin,
                   std::size_t end);
void aberth_avx2(const double*, std::size_t, const double*, const double*, double*, double*);
void sunit_scalar(const double*, const double*, const double*, std::size_t, std::size_t, const double*,
                  std::size_t begin, std::size_t end, double*);
void sunit_avx2(const double*, const double*, const double*, std::size_t, std::size_t, const double*, std::size_t,
                double*);
} // namespace detail

} // namespace heightforge::simd
