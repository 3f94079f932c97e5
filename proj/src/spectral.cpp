#include "gkp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gkp/quadrature.hpp"

namespace gkp::spec {

using std::numbers::pi;

void fft_pow2(std::vector<cplx>& data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2 requires a power-of-two length");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * pi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = data[i + j];
                const cplx v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

MomentumSpectrum momentum_wavefunction(const lith::SampledWaveFunction& wf,
                                       std::size_t padding) {
    const std::size_t n = wf.amps.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("momentum_wavefunction requires power-of-two samples");
    if (padding == 0 || (padding & (padding - 1)) != 0)
        throw std::invalid_argument("padding factor must be a power of two");
    const std::size_t n_pad = n * padding;
    std::vector<cplx> buf(n_pad, cplx{0.0, 0.0});
    std::copy(wf.amps.begin(), wf.amps.end(), buf.begin());
    fft_pow2(buf);

    MomentumSpectrum out;
    out.padding = padding;
    // y_j = j dy and exponent -i p y / (2 pi) match the DFT phase at
    // p_k = 4 pi^2 k / (n_pad dy); the measure contributes dy/(2 pi)^{3/2}.
    out.dp = 4.0 * pi * pi / (static_cast<double>(n_pad) * wf.dy);
    const double scale = wf.dy / std::pow(2.0 * pi, 1.5);
    out.p.resize(n_pad);
    out.psi.resize(n_pad);
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n_pad / 2);
    for (std::ptrdiff_t s = -half; s < half; ++s) {
        const std::size_t k = static_cast<std::size_t>(s < 0 ? s + static_cast<std::ptrdiff_t>(n_pad) : s);
        const std::size_t idx = static_cast<std::size_t>(s + half);
        out.p[idx] = out.dp * static_cast<double>(s);
        out.psi[idx] = buf[k] * scale;
    }
    return out;
}

double MomentumSpectrum::norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double w = (i == 0 || i + 1 == psi.size()) ? 0.5 : 1.0;
        acc += w * std::norm(psi[i]);
    }
    return acc * dp;
}

cplx MomentumSpectrum::at(double q) const {
    if (p.empty() || q < p.front() || q > p.back())
        throw std::out_of_range("momentum outside the computed spectrum");
    const double t = (q - p.front()) / dp;
    const std::size_t i = std::min(static_cast<std::size_t>(t), p.size() - 2);
    const double f = t - static_cast<double>(i);
    return psi[i] * (1.0 - f) + psi[i + 1] * f;
}

cplx momentum_amplitude_direct(const lith::SampledWaveFunction& wf, double p) {
    const double lo = wf.support_lo, hi = wf.support_hi;
    std::function<cplx(double)> eval;
    if (wf.analytic) {
        eval = wf.analytic;
    } else {
        eval = [&wf](double y) -> cplx {
            const double t = y / wf.dy;
            if (t < 0.0 || t > static_cast<double>(wf.amps.size() - 1)) return {0.0, 0.0};
            const std::size_t i = std::min(static_cast<std::size_t>(t), wf.amps.size() - 2);
            const double f = t - static_cast<double>(i);
            return wf.amps[i] * (1.0 - f) + wf.amps[i + 1] * f;
        };
    }
    auto integrand = [&eval, p](double y) {
        return eval(y) * std::polar(1.0, -p * y / (2.0 * pi));
    };
    // Oscillation and peak structure both force fine subdivision; integrate
    // per half-wave chunk of the comb to keep the adaptive budget bounded.
    cplx acc{0.0, 0.0};
    const double chunk = pi;
    double a = lo;
    while (a < hi - 1e-12) {
        const double b = std::min(a + chunk, hi);
        acc += quad::integrate_complex(integrand, a, b, 1e-9, 1e-16, 20000).value;
        a = b;
    }
    return acc / std::pow(2.0 * pi, 1.5);
}

double check_phase_relation(const MomentumSpectrum& a, const MomentumSpectrum& b,
                            double shift_x, double p_window) {
    if (a.size() != b.size() || a.dp != b.dp)
        throw std::invalid_argument("spectra must share a momentum grid");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.p[i]) > p_window) continue;
        const cplx diff = a.psi[i] - std::polar(1.0, a.p[i] * shift_x) * b.psi[i];
        worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

double envelope_bound(double p, double n0_sq, double L) {
    if (std::abs(p) < 1e-8) {
        const double x = 0.5 * p * L;
        // sin^2(x)/p^2 -> L^2/4 as p -> 0
        const double frac = std::abs(p) > 0.0 ? std::pow(std::sin(x) / p, 2) : L * L / 4.0;
        return 4.0 * n0_sq / pi * frac;
    }
    const double s = std::sin(0.5 * p * L);
    return 4.0 * n0_sq / pi * s * s / (p * p);
}

}  // namespace gkp::spec
