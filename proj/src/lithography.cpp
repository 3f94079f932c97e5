#include "gkp/lithography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gkp/kernels.hpp"
#include "gkp/quadrature.hpp"

namespace gkp::lith {

using std::numbers::pi;

namespace {

constexpr double kGainPi = pi;

double alpha1_of(double y, double alpha) {
    const double c = std::cos(y);
    return alpha * std::cos(pi * c * c);
}

std::size_t next_pow2(std::size_t v) {
    std::size_t n = 1;
    while (n < v) n <<= 1;
    return n;
}

}  // namespace

double SampledWaveFunction::norm() const {
    return kern::active().norm_trapezoid(amps.data(), amps.size()) * dy / (2.0 * pi);
}

cplx field_amplitude(double y, double alpha, double phase_gain) {
    if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
    const double c = std::cos(y);
    return std::polar(alpha, phase_gain * c * c);
}

cplx field_amplitude(double y, double alpha) { return field_amplitude(y, alpha, kGainPi); }

double j_integral(double alpha, double x0) {
    if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
    auto integrand = [alpha, x0](double y) {
        const double a1 = alpha1_of(y, alpha);
        return std::exp(2.0 * a1 * (x0 - a1));
    };
    return quad::integrate(integrand, 0.0, pi, 1e-10).value;
}

double outcome_pdf(double alpha, double x0) {
    return j_integral(alpha, x0) / std::sqrt(2.0 * pi * pi * pi) * std::exp(-0.5 * x0 * x0);
}

GridSpec choose_grid(double alpha, int d) {
    // Peaks linearize to Gaussians of width sigma_y = 1/(2 pi alpha);
    // require dy <= sigma_y/16 with dy = (pi/4)/2^k so that a pi/4 shift
    // is an exact number of samples.
    int k = 6;
    if (alpha > 0.0) {
        const double sigma = 1.0 / (2.0 * pi * alpha);
        while ((pi / 4.0) / static_cast<double>(1 << k) > sigma / 16.0) {
            ++k;
            if (k > 26) throw GridError("alpha too large for a representable grid");
        }
    }
    GridSpec g;
    g.dy = (pi / 4.0) / static_cast<double>(1 << k);
    const double extent = pi * d + pi / 4.0;
    g.n = next_pow2(static_cast<std::size_t>(std::ceil(extent / g.dy)) + 1);
    return g;
}

Generated conditional_wavefunction(double alpha, int d, double x0) {
    return conditional_wavefunction(alpha, d, x0, choose_grid(alpha, d));
}

Generated conditional_wavefunction(double alpha, int d, double x0, const GridSpec& grid) {
    if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
    if (d < 2 || d % 2 != 0) throw std::domain_error("d must be an even integer >= 2");
    if (grid.n == 0 || (grid.n & (grid.n - 1)) != 0)
        throw GridError("grid point count must be a power of two");
    const double quarter = pi / 4.0;
    const double cells = quarter / grid.dy;
    if (std::abs(cells - std::round(cells)) > 1e-9 * cells)
        throw GridError("grid step must divide pi/4");
    if (alpha > 0.0) {
        const double sigma = 1.0 / (2.0 * pi * alpha);
        if (grid.dy > sigma / 16.0) {
            const auto needed = choose_grid(alpha, d);
            throw GridError("grid under-resolves peaks: need at least " +
                            std::to_string(needed.n) + " points (dy <= " +
                            std::to_string(sigma / 16.0) + ")");
        }
    }
    const double support = pi * d;
    if (static_cast<double>(grid.n - 1) * grid.dy < support)
        throw GridError("grid does not cover the support [0, pi d]");

    const double j_val = j_integral(alpha, x0);
    const double n_x0 = std::sqrt(2.0 * pi / (d * j_val)) * std::exp(0.25 * x0 * x0);

    Generated out;
    auto& wf = out.wf;
    wf.dy = grid.dy;
    wf.amps.assign(grid.n, cplx{0.0, 0.0});
    wf.support_lo = 0.0;
    wf.support_hi = support;
    const std::size_t n_support = static_cast<std::size_t>(std::llround(support / grid.dy));
    for (std::size_t i = 0; i <= n_support && i < grid.n; ++i) {
        const double y = wf.y_at(i);
        const cplx field = field_amplitude(y, alpha);
        const double a1 = field.real(), a2 = field.imag();
        const double mag = std::exp(-(a1 - 0.5 * x0) * (a1 - 0.5 * x0));
        const double phase = -a2 * (a1 - x0);
        wf.amps[i] = n_x0 * mag * std::polar(1.0, phase);
    }
    wf.analytic = [alpha, x0, n_x0, support](double y) -> cplx {
        if (y < 0.0 || y > support) return {0.0, 0.0};
        const cplx field = field_amplitude(y, alpha);
        const double a1 = field.real(), a2 = field.imag();
        return n_x0 * std::exp(-(a1 - 0.5 * x0) * (a1 - 0.5 * x0)) *
               std::polar(1.0, -a2 * (a1 - x0));
    };

    out.record.alpha = alpha;
    out.record.d = d;
    out.record.x0 = x0;
    out.record.normalization = n_x0;
    out.record.j_value = j_val;
    out.record.pdf_at_x0 = outcome_pdf(alpha, x0);
    out.record.grid_points = grid.n;
    out.record.dy = grid.dy;
    return out;
}

SampledWaveFunction displace(const SampledWaveFunction& wf, double shift) {
    const double cells = shift / wf.dy;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, std::abs(cells)))
        throw GridError("displacement must be a multiple of the grid step dy");
    const long long m = static_cast<long long>(rounded);
    SampledWaveFunction out;
    out.dy = wf.dy;
    out.amps.assign(wf.amps.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < wf.amps.size(); ++i) {
        if (wf.amps[i] == cplx{0.0, 0.0}) continue;
        const long long j = static_cast<long long>(i) + m;
        if (j < 0 || j >= static_cast<long long>(out.amps.size()))
            throw GridError("displacement moves support outside the grid");
        out.amps[static_cast<std::size_t>(j)] = wf.amps[i];
    }
    out.support_lo = wf.support_lo + rounded * wf.dy;
    out.support_hi = wf.support_hi + rounded * wf.dy;
    if (wf.analytic) {
        auto base = wf.analytic;
        const double delta = rounded * wf.dy;
        out.analytic = [base, delta](double y) { return base(y - delta); };
    }
    return out;
}

cplx overlap(const SampledWaveFunction& a, const SampledWaveFunction& b) {
    if (a.amps.size() != b.amps.size() || a.dy != b.dy)
        throw GridError("overlap requires a common grid");
    return kern::active().dot_trapezoid(a.amps.data(), b.amps.data(), a.amps.size()) *
           a.dy / (2.0 * pi);
}

CodewordState superpose(cplx a, cplx b, const SampledWaveFunction& phi0,
                        const SampledWaveFunction& phi1) {
    if (phi0.amps.size() != phi1.amps.size() || phi0.dy != phi1.dy)
        throw GridError("superpose requires a common grid");
    const double coeff_norm = std::norm(a) + std::norm(b);
    if (coeff_norm < 1e-30)
        throw std::domain_error("superposition coefficients must not both vanish");
    CodewordState st;
    st.coeff_a = a;
    st.coeff_b = b;
    st.overlap_01 = overlap(phi0, phi1);
    const double n_sq = coeff_norm + 2.0 * std::real(std::conj(a) * b * st.overlap_01);
    st.normalization = std::sqrt(n_sq);

    st.combined.dy = phi0.dy;
    st.combined.amps.resize(phi0.amps.size());
    const cplx ca = a / st.normalization;
    const cplx cb = b / st.normalization;
    kern::active().add_scaled(st.combined.amps.data(), phi0.amps.data(), ca,
                              phi1.amps.data(), cb, phi0.amps.size());
    st.combined.support_lo = std::min(phi0.support_lo, phi1.support_lo);
    st.combined.support_hi = std::max(phi0.support_hi, phi1.support_hi);
    if (phi0.analytic && phi1.analytic) {
        auto f0 = phi0.analytic;
        auto f1 = phi1.analytic;
        st.combined.analytic = [f0, f1, ca, cb](double y) { return ca * f0(y) + cb * f1(y); };
    }
    return st;
}

// --- outcome sampling -------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

OutcomeSampler::OutcomeSampler(double alpha) {
    constexpr std::size_t knots = 1 << 14;
    // Gaussian components sit at 2 alpha_1(y) in [-2 alpha, 2 alpha]; eight
    // unit widths beyond the extremes leave < 1e-15 of mass outside the table.
    const double hi = 2.0 * alpha + 8.0, lo = -hi;
    x_.resize(knots);
    cdf_.resize(knots);
    std::vector<double> pdf(knots);
    const double h = (hi - lo) / static_cast<double>(knots - 1);
    for (std::size_t i = 0; i < knots; ++i) {
        x_[i] = lo + h * static_cast<double>(i);
        pdf[i] = outcome_pdf(alpha, x_[i]);
    }
    cdf_[0] = 0.0;
    for (std::size_t i = 1; i < knots; ++i)
        cdf_[i] = cdf_[i - 1] + 0.5 * (pdf[i - 1] + pdf[i]) * h;
    const double total = cdf_.back();
    for (auto& c : cdf_) c /= total;
}

std::uint64_t OutcomeSampler::seed_state(std::uint64_t seed) { return seed; }

double OutcomeSampler::sample(std::uint64_t& rng_state) const {
    const double u =
        static_cast<double>(splitmix64(rng_state) >> 11) * 0x1.0p-53;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return x_.front();
    if (it == cdf_.end()) return x_.back();
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    const double c0 = cdf_[i - 1], c1 = cdf_[i];
    const double t = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
    return x_[i - 1] + t * (x_[i] - x_[i - 1]);
}

std::vector<double> sample_outcomes(double alpha, std::uint64_t seed, std::size_t count) {
    OutcomeSampler sampler(alpha);
    std::uint64_t state = OutcomeSampler::seed_state(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = sampler.sample(state);
    return out;
}

}  // namespace gkp::lith
