#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

// Construction of the homodyne-conditioned atomic wavefunction, the outcome
// probability density, displaced codewords and their superpositions.
//
// Conventions: scaled position y = k_c x with lambda_c = 1, k_c = 2 pi.
// Wavefunctions are sampled on uniform y grids with normalization
// int |phi(y)|^2 dy / (2 pi) = 1.

namespace gkp::lith {

using cplx = std::complex<double>;

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double dy;        // step; must divide pi/4 so displacement is lossless
    std::size_t n;    // total points, power of two (for the spectral module)
};

// Smallest grid with dy = (pi/4)/2^k resolving the peak width 1/(2 pi alpha)
// with >= 16 samples per sigma, covering [0, pi d + pi/4].
GridSpec choose_grid(double alpha, int d);

struct SampledWaveFunction {
    double dy = 0.0;
    std::vector<cplx> amps;            // length n; zero outside support
    double support_lo = 0.0;
    double support_hi = 0.0;
    // Continuous evaluator when a closed form exists (construction,
    // displacement and superposition propagate it); empty otherwise.
    std::function<cplx(double)> analytic;

    std::size_t size() const { return amps.size(); }
    double y_at(std::size_t i) const { return dy * static_cast<double>(i); }
    // Trapezoid norm int |phi|^2 dy / (2 pi) over the support.
    double norm() const;
};

struct GenerationRecord {
    double alpha = 0.0;
    int d = 0;
    double x0 = 0.0;
    double normalization = 0.0;   // N_{x0}
    double j_value = 0.0;         // J(alpha, x0)
    double pdf_at_x0 = 0.0;       // P(x0)
    std::size_t grid_points = 0;
    double dy = 0.0;
};

struct CodewordState {
    cplx coeff_a, coeff_b;
    SampledWaveFunction combined;
    double normalization = 0.0;    // N with N^2 = |a|^2 + |b|^2 + 2 Re(a* b <0|1>)
    cplx overlap_01{0.0, 0.0};
};

// Conditional cavity field amplitude alpha * exp(i * gain * cos^2 y);
// the real and imaginary parts are alpha_1(y), alpha_2(y).
cplx field_amplitude(double y, double alpha, double phase_gain);
cplx field_amplitude(double y, double alpha);  // gain pi (measurement timing choice)

// J(alpha, x0) = int_0^pi exp{2 alpha_1(y) [x0 - alpha_1(y)]} dy,
// adaptive quadrature to relative tolerance 1e-10.
double j_integral(double alpha, double x0);

// Homodyne outcome density P(x0) = J(alpha, x0) / sqrt(2 pi^3) * exp(-x0^2/2).
double outcome_pdf(double alpha, double x0);

// Inverse-CDF sampler for the outcome density, tabulated on
// [-(2 alpha + 8), 2 alpha + 8] with 2^14 knots; deterministic per seed.
class OutcomeSampler {
public:
    explicit OutcomeSampler(double alpha);
    double sample(std::uint64_t& rng_state) const;  // splitmix-style state
    static std::uint64_t seed_state(std::uint64_t seed);

private:
    std::vector<double> x_;    // knots
    std::vector<double> cdf_;  // monotone, cdf_.front()=0, back()=1
};

std::vector<double> sample_outcomes(double alpha, std::uint64_t seed, std::size_t count);

// Sample the conditional wavefunction on [0, pi d]; for x0 = 0 this is the
// zero-codeword. Throws GridError when the supplied grid under-resolves the
// peaks (the message names the required point count).
struct Generated {
    SampledWaveFunction wf;
    GenerationRecord record;
};
Generated conditional_wavefunction(double alpha, int d, double x0);
Generated conditional_wavefunction(double alpha, int d, double x0, const GridSpec& grid);

// Translate by a grid-commensurate shift (norm preserving).
SampledWaveFunction displace(const SampledWaveFunction& wf, double shift);

// <a|b> = int conj(phi_a) phi_b dy / (2 pi), composite trapezoid.
cplx overlap(const SampledWaveFunction& a, const SampledWaveFunction& b);

// (a phi0 + b phi1) / N with N^2 = |a|^2 + |b|^2 + 2 Re(a* b <0|1>); the
// coefficients need not be pre-normalized, so (1, +-1) yields the
// N_+-^2 = 2 (1 +- Re<0|1>) states directly.
CodewordState superpose(cplx a, cplx b, const SampledWaveFunction& phi0,
                        const SampledWaveFunction& phi1);

}  // namespace gkp::lith
