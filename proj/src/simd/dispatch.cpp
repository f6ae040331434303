#include "heightforge/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace heightforge::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Level detect() {
    const bool avx2 = cpu_has_avx2();
    if (const char* env = std::getenv("HEIGHTFORGE_SIMD")) {
        if (std::strcmp(env, "scalar") == 0)
            return Level::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2)
            return Level::avx2;
        return Level::scalar;
    }
    return avx2 ? Level::avx2 : Level::scalar;
}

} // namespace

Level active_level() {
    static const Level level = detect();
    return level;
}

const char* level_name(Level level) {
    return level == Level::avx2 ? "avx2" : "scalar";
}

void aberth_corrections(const double* coeffs, std::size_t degree, const double* re, const double* im, double* dre,
                        double* dim, Level level) {
    if (level == Level::avx2 && cpu_has_avx2())
        detail::aberth_avx2(coeffs, degree, re, im, dre, dim);
    else
        detail::aberth_scalar(coeffs, degree, re, im, dre, dim, 0, degree);
}

void aberth_corrections(const double* coeffs, std::size_t degree, const double* re, const double* im, double* dre,
                        double* dim) {
    aberth_corrections(coeffs, degree, re, im, dre, dim, active_level());
}

void sunit_height_batch(const double* base, const double* gens, const double* logs, std::size_t rank,
                        std::size_t primes, const double* points, std::size_t count, double* out, Level level) {
    if (level == Level::avx2 && cpu_has_avx2())
        detail::sunit_avx2(base, gens, logs, rank, primes, points, count, out);
    else
        detail::sunit_scalar(base, gens, logs, rank, primes, points, 0, count, out);
}

void sunit_height_batch(const double* base, const double* gens, const double* logs, std::size_t rank,
                        std::size_t primes, const double* points, std::size_t count, double* out) {
    sunit_height_batch(base, gens, logs, rank, primes, points, count, out, active_level());
}

} // namespace heightforge::simd
