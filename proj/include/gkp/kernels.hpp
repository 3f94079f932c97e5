#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops over complex sample arrays, used by the
// wavefunction and spectrum code. Scalar reference kernels always exist;
// on x86-64 an AVX2 variant is selected at runtime when the CPU supports
// it. The two are equivalence-tested against each other.

namespace gkp::kern {

using cplx = std::complex<double>;

struct Backend {
    // Trapezoid sum of |a_j|^2 (half weight on first/last element).
    double (*norm_trapezoid)(const cplx* a, std::size_t n);
    // Trapezoid sum of conj(a_j) * b_j.
    cplx (*dot_trapezoid)(const cplx* a, const cplx* b, std::size_t n);
    // a_j *= s
    void (*scale)(cplx* a, std::size_t n, double s);
    // out_j = ca * a_j + cb * b_j
    void (*add_scaled)(cplx* out, const cplx* a, cplx ca, const cplx* b, cplx cb,
                       std::size_t n);
    // out_j = |a_j|^2
    void (*abs_squared)(const cplx* a, double* out, std::size_t n);
    const char* name;
};

const Backend& scalar_backend();
#if defined(__x86_64__)
const Backend& avx2_backend();
bool avx2_available();
#endif

// Runtime-dispatched active backend (AVX2 when available, else scalar).
const Backend& active();
std::string active_name();

}  // namespace gkp::kern
