#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gkp/lithography.hpp"

// Momentum-space analysis: psi(p) = (2 pi)^{-3/2} int phi(y) e^{-i p y / 2 pi} dy,
// computed either by zero-padded FFT of the sampled wavefunction or by direct
// quadrature at a single momentum (the slow cross-check route).

namespace gkp::spec {

using cplx = std::complex<double>;

struct MomentumSpectrum {
    std::vector<double> p;    // ascending, uniform spacing dp, centered on 0
    std::vector<cplx> psi;
    double dp = 0.0;
    std::size_t padding = 0;  // zero-padding factor used

    std::size_t size() const { return p.size(); }
    // Trapezoid int |psi(p)|^2 dp (equals 1 for a normalized wavefunction).
    double norm() const;
    // Linear interpolation of psi at momentum q (q within the covered range).
    cplx at(double q) const;
};

// FFT of the sampled wavefunction, zero-padded by `padding` (power of two).
// The grid point count must be a power of two.
MomentumSpectrum momentum_wavefunction(const lith::SampledWaveFunction& wf,
                                       std::size_t padding = 8);

// Direct adaptive quadrature over the support, using the analytic evaluator
// when present (falls back to piecewise-linear interpolation of the samples).
cplx momentum_amplitude_direct(const lith::SampledWaveFunction& wf, double p);

// In-place radix-2 decimation-in-time FFT (forward, e^{-2 pi i jk/N}).
// Throws std::invalid_argument unless the length is a power of two.
void fft_pow2(std::vector<cplx>& data);

// Max over the common momentum range of |psi_a(p) - e^{i p shift_x} psi_b(p)|
// where shift_x is the position-space offset between the two states in x
// units (1/8 for neighbouring comb peaks). Small values confirm the pure
// phase relation between the spectra.
double check_phase_relation(const MomentumSpectrum& a, const MomentumSpectrum& b,
                            double shift_x = 0.125,
                            double p_window = 1e300);

// Pointwise envelope 4 N0^2 sin^2(pL/2) / (pi p^2), with the p -> 0 limit
// N0^2 L^2 / pi. Stated to dominate |psi_0(p)|^2 almost everywhere.
double envelope_bound(double p, double n0_sq, double L);

}  // namespace gkp::spec
