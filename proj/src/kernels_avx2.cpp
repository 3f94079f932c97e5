#include "gkp/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

// Interleaved complex<double> layout: a __m256d holds two complex values
// [re0, im0, re1, im1]. Reductions accumulate in 4 lanes and fold at the end.

namespace gkp::kern {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double norm_trapezoid_v(const cplx* a, std::size_t n) {
    if (n < 2) return 0.0;
    const double* p = reinterpret_cast<const double*>(a);
    std::size_t inner = n - 2;  // elements 1 .. n-2 at full weight
    const double* q = p + 2;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= inner; i += 2) {
        __m256d v = _mm256_loadu_pd(q + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < inner; ++i) s += q[2 * i] * q[2 * i] + q[2 * i + 1] * q[2 * i + 1];
    s += 0.5 * (std::norm(a[0]) + std::norm(a[n - 1]));
    return s;
}

cplx dot_trapezoid_v(const cplx* a, const cplx* b, std::size_t n) {
    if (n < 2) return {0.0, 0.0};
    const double* pa = reinterpret_cast<const double*>(a) + 2;
    const double* pb = reinterpret_cast<const double*>(b) + 2;
    std::size_t inner = n - 2;
    // conj(a)*b = (ar*br + ai*bi) + i (ar*bi - ai*br)
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= inner; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);  // ar0 ai0 ar1 ai1
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        accr = _mm256_fmadd_pd(va, vb, accr);      // ar*br, ai*bi pairs
        __m256d vbsw = _mm256_permute_pd(vb, 0x5);  // bi0 br0 bi1 br1
        acci = _mm256_fmadd_pd(va, vbsw, acci);     // ar*bi, ai*br pairs
    }
    // accr lanes: [ar0*br0, ai0*bi0, ar1*br1, ai1*bi1] -> sum all = Re part
    double re = hsum(accr);
    // acci lanes: [ar0*bi0, ai0*br0, ...] -> Im = sum(ar*bi) - sum(ai*br)
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acci);
    double im = lanes[0] - lanes[1] + lanes[2] - lanes[3];
    for (; i < inner; ++i) {
        const double ar = pa[2 * i], ai = pa[2 * i + 1];
        const double br = pb[2 * i], bi = pb[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    cplx ends = 0.5 * (std::conj(a[0]) * b[0] + std::conj(a[n - 1]) * b[n - 1]);
    return cplx{re, im} + ends;
}

void scale_v(cplx* a, std::size_t n, double s) {
    double* p = reinterpret_cast<double*>(a);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), vs));
    }
    for (; i < n; ++i) a[i] *= s;
}

void add_scaled_v(cplx* out, const cplx* a, cplx ca, const cplx* b, cplx cb,
                  std::size_t n) {
    double* po = reinterpret_cast<double*>(out);
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    const __m256d car = _mm256_set1_pd(ca.real());
    const __m256d cai = _mm256_set1_pd(ca.imag());
    const __m256d cbr = _mm256_set1_pd(cb.real());
    const __m256d cbi = _mm256_set1_pd(cb.imag());
    // sign mask to build (re, im)*(cr + i ci) from interleaved data:
    // out_re = cr*re - ci*im ; out_im = cr*im + ci*re
    const __m256d signs = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d ra = _mm256_mul_pd(va, car);
        __m256d sa = _mm256_mul_pd(_mm256_mul_pd(_mm256_permute_pd(va, 0x5), cai), signs);
        __m256d rb = _mm256_mul_pd(vb, cbr);
        __m256d sb = _mm256_mul_pd(_mm256_mul_pd(_mm256_permute_pd(vb, 0x5), cbi), signs);
        _mm256_storeu_pd(po + 2 * i,
                         _mm256_add_pd(_mm256_add_pd(ra, sa), _mm256_add_pd(rb, sb)));
    }
    for (; i < n; ++i) out[i] = ca * a[i] + cb * b[i];
}

void abs_squared_v(const cplx* a, double* out, std::size_t n) {
    const double* p = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(p + 2 * i);
        __m256d sq = _mm256_mul_pd(v, v);               // r0^2 i0^2 r1^2 i1^2
        __m256d sw = _mm256_permute_pd(sq, 0x5);        // i0^2 r0^2 i1^2 r1^2
        __m256d s = _mm256_add_pd(sq, sw);              // n0 n0 n1 n1
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, s);
        out[i] = lanes[0];
        out[i + 1] = lanes[2];
    }
    for (; i < n; ++i) out[i] = std::norm(a[i]);
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend b{norm_trapezoid_v, dot_trapezoid_v, scale_v,
                           add_scaled_v, abs_squared_v, "avx2"};
    return b;
}

bool avx2_available() { return __builtin_cpu_supports("avx2") != 0; }

}  // namespace gkp::kern

#endif  // __x86_64__
