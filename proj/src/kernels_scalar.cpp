#include "gkp/kernels.hpp"

namespace gkp::kern {

namespace {

double norm_trapezoid_s(const cplx* a, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) acc += std::norm(a[i]);
    acc += 0.5 * (std::norm(a[0]) + std::norm(a[n - 1]));
    return acc;
}

cplx dot_trapezoid_s(const cplx* a, const cplx* b, std::size_t n) {
    if (n < 2) return {0.0, 0.0};
    cplx acc{0.0, 0.0};
    for (std::size_t i = 1; i + 1 < n; ++i) acc += std::conj(a[i]) * b[i];
    acc += 0.5 * (std::conj(a[0]) * b[0] + std::conj(a[n - 1]) * b[n - 1]);
    return acc;
}

void scale_s(cplx* a, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void add_scaled_s(cplx* out, const cplx* a, cplx ca, const cplx* b, cplx cb,
                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = ca * a[i] + cb * b[i];
}

void abs_squared_s(const cplx* a, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::norm(a[i]);
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{norm_trapezoid_s, dot_trapezoid_s, scale_s,
                           add_scaled_s, abs_squared_s, "scalar"};
    return b;
}

}  // namespace gkp::kern
