#include "gkp/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gkp/quadrature.hpp"

namespace gkp::err {

using std::numbers::pi;

namespace {

constexpr double kQuadRel = 1e-10;

double alpha1_of(double y, double alpha) {
    const double c = std::cos(y);
    return alpha * std::cos(pi * c * c);
}

cplx single_period_profile(double y, double alpha) {
    // One period of the unnormalized codeword: exp[-a1^2 - i a1 a2].
    const cplx f = lith::field_amplitude(y, alpha);
    const double a1 = f.real(), a2 = f.imag();
    return std::exp(-a1 * a1) * std::polar(1.0, -a1 * a2);
}

// Fractional-cell trapezoid of a tabulated function over [lo, hi] on the
// uniform grid {i*dy}; end cells are weighted by linear interpolation.
double integrate_table(const std::vector<double>& f, double dy, double lo, double hi) {
    if (lo > hi) throw std::domain_error("empty integration interval");
    const double n_last = static_cast<double>(f.size() - 1) * dy;
    if (lo < -1e-12 || hi > n_last * (1.0 + 1e-12) + 1e-12)
        throw std::domain_error("integration region outside the tabulated grid");
    auto value_at = [&](double t) {
        const double u = t / dy;
        std::size_t i = std::min(static_cast<std::size_t>(std::max(u, 0.0)), f.size() - 2);
        const double frac = u - static_cast<double>(i);
        return f[i] * (1.0 - frac) + f[i + 1] * frac;
    };
    const std::size_t i0 = static_cast<std::size_t>(std::ceil(lo / dy - 1e-12));
    const std::size_t i1 = static_cast<std::size_t>(std::floor(hi / dy + 1e-12));
    double acc = 0.0;
    if (i0 <= i1 && i1 < f.size()) {
        for (std::size_t i = i0; i < i1; ++i) acc += 0.5 * (f[i] + f[i + 1]) * dy;
        const double left = static_cast<double>(i0) * dy;
        if (left > lo) acc += 0.5 * (value_at(lo) + f[i0]) * (left - lo);
        const double right = static_cast<double>(i1) * dy;
        if (hi > right) acc += 0.5 * (f[i1] + value_at(hi)) * (hi - right);
    } else {
        acc = 0.5 * (value_at(lo) + value_at(hi)) * (hi - lo);
    }
    return acc;
}

// Fourier coefficients (harmonics e^{ikp/8}, period 16 pi) of the momentum
// error-region indicators and of the full weights (1 +/- cos(p/8)) chi_+/-.
double chi_minus_coeff(long long k) {
    if (k == 0) return 0.5;
    if (k % 2 == 0) return 0.0;
    const long long r = ((k % 4) + 4) % 4;   // odd k: sin(pi k/2) = +/-1
    const double s = (r == 1) ? 1.0 : -1.0;
    return s / (pi * static_cast<double>(k));
}

double chi_coeff(code::Sign sign, long long k) {
    const double c = chi_minus_coeff(k);
    if (sign == code::Sign::minus) return c;
    return (k % 2 == 0) ? c : -c;            // chi_+ = chi_- shifted by 8 pi
}

double weight_coeff(code::Sign sign, long long k) {
    const double s = sign == code::Sign::plus ? 1.0 : -1.0;
    return chi_coeff(sign, k) +
           s * 0.5 * (chi_coeff(sign, k - 1) + chi_coeff(sign, k + 1));
}

struct AutoCorr {
    cplx a[4];        // A(m/8), m = 0..3; A(-m/8) = conj(A(m/8)); A(1/2) = 0
    double n0_sq;
};

AutoCorr autocorrelation(double alpha, int d) {
    if (d < 2 || d % 2 != 0) throw std::domain_error("d must be an even integer >= 2");
    AutoCorr ac;
    ac.n0_sq = 2.0 * pi / (d * lith::j_integral(alpha, 0.0));
    for (int m = 0; m < 4; ++m) {
        const double shift = pi * m / 4.0;
        auto f = [alpha, shift](double y) {
            return single_period_profile(y + shift, alpha) *
                   std::conj(single_period_profile(y, alpha));
        };
        // abs_tol floor: at large alpha the shifted-profile integrals cancel
        // to ~0 and a purely relative target is unreachable
        ac.a[m] = quad::integrate_complex(f, 0.0, pi - shift, 1e-12, 1e-15).value *
                  (ac.n0_sq / (2.0 * pi));
    }
    return ac;
}

cplx a_at(const AutoCorr& ac, int m) {
    if (m >= 4 || m <= -4) return {0.0, 0.0};
    return m >= 0 ? ac.a[m] : std::conj(ac.a[-m]);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// h(p) = (1 +/- cos(p/8)) / p^2, the envelope integrand with sin^2 replaced
// by its extremes.
double envelope_h(code::Sign sign, double p) {
    const double c = std::cos(p / 8.0);
    const double w = sign == code::Sign::plus ? 1.0 + c : 1.0 - c;
    if (sign == code::Sign::minus && std::abs(p) < 1e-4) {
        // (1 - cos(p/8))/p^2 -> 1/128, series to avoid cancellation
        const double u = p / 8.0;
        return (0.5 - u * u / 24.0) / 64.0;
    }
    return w / (p * p);
}

// Exact integral of (1 +/- cos(p/8)) sin^2(pL/2)/p^2 over [a, b], chunked to
// about half an oscillation of sin(pL) per adaptive call.
double bound_region_exact(code::Sign sign, double a, double b, double L) {
    auto f = [sign, L](double p) {
        const double s = std::sin(0.5 * p * L);
        return envelope_h(sign, p) * s * s;
    };
    const double period = 2.0 * pi / L;      // of sin^2(pL/2)
    const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / (0.5 * period))));
    const double h = (b - a) / chunks;
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < chunks; ++i) {
        const double lo = a + i * h, hi = (i + 1 == chunks) ? b : a + (i + 1) * h;
        const double v = quad::integrate(f, lo, hi, 1e-9, 1e-18, 200).value;
        const double t = acc + (v - comp);
        comp = (t - acc) - (v - comp);
        acc = t;
    }
    return acc;
}

// Mean-value form for large L: sin^2 -> 1/2 plus an oscillatory remainder
// -(1/2) int h(p) cos(pL) dp, capped by integration by parts:
// |int_a^b h cos(pL) dp| <= (h(a) + h(b) + int |h'|) / L. The cap is added,
// keeping the result an upper bound.
double bound_region_mean(code::Sign sign, double a, double b, double L) {
    auto h = [sign](double p) { return envelope_h(sign, p); };
    const double smooth = quad::integrate(h, a, b, 1e-11).value;
    double var;
    if (sign == code::Sign::minus && a < 0.0 && b > 0.0) {
        // central region: h is even, peaks at 0 with h(0) = 1/128 and
        // decreases outward, so the total variation is exact
        var = 2.0 * (1.0 / 128.0 - h(b));
    } else {
        // |h'| <= (1/8)/p^2 + 4/p^3 on p > 0, integrated in closed form
        const double lo = std::min(std::abs(a), std::abs(b));
        const double hi = std::max(std::abs(a), std::abs(b));
        var = (1.0 / 8.0) * (1.0 / lo - 1.0 / hi) + 2.0 * (1.0 / (lo * lo) - 1.0 / (hi * hi));
    }
    const double osc_cap = (h(a) + h(b) + var) / L;
    return 0.5 * smooth + 0.5 * osc_cap;
}

double bound_region(code::Sign sign, double a, double b, int d) {
    const double L = 0.5 * d;
    return d <= 512 ? bound_region_exact(sign, a, b, L)
                    : bound_region_mean(sign, a, b, L);
}

}  // namespace

double p_x_closed_form(double alpha, int d) {
    if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
    if (d < 2) throw std::domain_error("d must be >= 2");
    const double j0 = lith::j_integral(alpha, 0.0);
    const double n0_sq = 2.0 * pi / (d * j0);
    auto f = [alpha](double y) {
        const double a1 = alpha1_of(y, alpha);
        return std::exp(-2.0 * a1 * a1);
    };
    const double integral = quad::integrate(f, 0.0, pi / 8.0, kQuadRel).value;
    return (4.0 * d - 1.0) * n0_sq / (2.0 * pi) * integral;
}

double p_x_region_sum(const lith::SampledWaveFunction& wf,
                      const code::ErrorRegionSet& regions) {
    if (regions.space != code::Space::position)
        throw std::domain_error("expected position-space regions");
    std::vector<double> abs2(wf.amps.size());
    for (std::size_t i = 0; i < abs2.size(); ++i) abs2[i] = std::norm(wf.amps[i]);
    double acc = 0.0;
    for (const auto& iv : regions.intervals)
        acc += integrate_table(abs2, wf.dy, iv.lo, iv.hi);
    return acc / (2.0 * pi);
}

double p_p_direct(const spec::MomentumSpectrum& spectrum, code::Sign sign,
                  int n_max, double n_sq) {
    if (n_sq <= 0.0) throw std::domain_error("normalization must be positive");
    const auto regions = code::momentum_error_regions(sign, n_max);
    const double p_lo = spectrum.p.front(), p_hi = spectrum.p.back();
    if (regions.intervals.front().lo < p_lo || regions.intervals.back().hi > p_hi)
        throw std::domain_error(
            "spectrum extent insufficient for the requested n_max");
    std::vector<double> weighted(spectrum.size());
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        const double c = std::cos(spectrum.p[i] / 8.0);
        const double w = sign == code::Sign::plus ? 1.0 + c : 1.0 - c;
        weighted[i] = w * std::norm(spectrum.psi[i]);
    }
    double acc = 0.0;
    for (const auto& iv : regions.intervals)
        acc += integrate_table(weighted, spectrum.dp, iv.lo - p_lo, iv.hi - p_lo);
    return clamp01(2.0 / n_sq * acc);
}

double p_p_tail_estimate(const spec::MomentumSpectrum& spectrum, code::Sign sign,
                         int n_max, double n_sq) {
    const auto regions = code::momentum_error_regions(sign, n_max);
    const double edge = regions.intervals.back().hi;
    double mass = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        if (std::abs(spectrum.p[i]) > edge) mass += std::norm(spectrum.psi[i]);
    return 2.0 / n_sq * 2.0 * mass * spectrum.dp;
}

cplx overlap_01(double alpha, int d) {
    const auto ac = autocorrelation(alpha, d);
    return static_cast<double>(d) * std::conj(ac.a[1]) +
           static_cast<double>(d - 1) * ac.a[3];
}

MomentumBranches p_p_semianalytic(double alpha, int d) {
    const auto ac = autocorrelation(alpha, d);
    MomentumBranches out;
    out.overlap_01 = static_cast<double>(d) * std::conj(ac.a[1]) +
                     static_cast<double>(d - 1) * ac.a[3];
    for (code::Sign sign : {code::Sign::plus, code::Sign::minus}) {
        // int W(p) |psi(p)|^2 dp = sum_k c_k a(k/8) with a the position-space
        // autocorrelation of the full comb: a(j/2 + m/8) = (d-|j|) A(m/8).
        cplx acc{0.0, 0.0}, comp{0.0, 0.0};
        for (long long j = -(d - 1); j <= d - 1; ++j) {
            const double mult = static_cast<double>(d - std::llabs(j));
            cplx term{0.0, 0.0};
            for (int m = -3; m <= 3; ++m)
                term += weight_coeff(sign, 4 * j + m) * a_at(ac, m);
            term *= mult;
            const cplx t = acc + (term - comp);
            comp = (t - acc) - (term - comp);
            acc = t;
        }
        const double n_sq = 2.0 * (1.0 + (sign == code::Sign::plus ? 1.0 : -1.0) *
                                             out.overlap_01.real());
        const double val = clamp01(2.0 / n_sq * acc.real());
        (sign == code::Sign::plus ? out.pp_plus : out.pp_minus) = val;
    }
    return out;
}

double p_plus_bound(double alpha, int d, int n_max) {
    if (n_max < 1) throw std::domain_error("n_max must be >= 1");
    const double n0_sq = 2.0 * pi / (d * lith::j_integral(alpha, 0.0));
    const double n_plus_sq = 2.0 * (1.0 + overlap_01(alpha, d).real());
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n)
        sum += bound_region(code::Sign::plus, (4.0 * n + 1.0) * 4.0 * pi,
                            (4.0 * n + 3.0) * 4.0 * pi, d);
    sum += 2.0 / ((4.0 * n_max + 5.0) * 4.0 * pi);    // (1+cos) <= 2 tail
    return clamp01(16.0 / pi * n0_sq / n_plus_sq * sum);
}

double p_minus_bound(double alpha, int d, int n_max) {
    if (n_max < 1) throw std::domain_error("n_max must be >= 1");
    const double n0_sq = 2.0 * pi / (d * lith::j_integral(alpha, 0.0));
    const double n_minus_sq = 2.0 * (1.0 - overlap_01(alpha, d).real());
    double sum = bound_region(code::Sign::minus, -4.0 * pi, 4.0 * pi, d);
    for (int n = 1; n <= n_max; ++n)
        sum += 2.0 * bound_region(code::Sign::minus, (4.0 * n - 1.0) * 4.0 * pi,
                                  (4.0 * n + 1.0) * 4.0 * pi, d);
    sum += 2.0 * 2.0 / ((4.0 * n_max + 3.0) * 4.0 * pi);
    return clamp01(8.0 / pi * n0_sq / n_minus_sq * sum);
}

IntrinsicErrorReport evaluate_report(double alpha, int d, const ReportOptions& opts) {
    IntrinsicErrorReport rep;
    rep.n_max = opts.n_max;
    rep.quad_rel_tol = kQuadRel;
    rep.px = clamp01(p_x_closed_form(alpha, d));
    if (d <= opts.spectrum_d_cutoff) {
        rep.momentum_route = "spectrum";
        const auto gen = lith::conditional_wavefunction(alpha, d, 0.0);
        const auto shifted = lith::displace(gen.wf, pi / 4.0);
        rep.overlap_01 = lith::overlap(gen.wf, shifted);
        rep.n_plus_sq = 2.0 * (1.0 + rep.overlap_01.real());
        rep.n_minus_sq = 2.0 * (1.0 - rep.overlap_01.real());
        const auto spectrum = spec::momentum_wavefunction(gen.wf, opts.padding);
        // clamp the region count to what the spectral extent can host; the
        // clamped value is reported and the omitted mass enters the tail
        const double p_hi = spectrum.p.back();
        const int fit_plus = static_cast<int>(std::floor(((p_hi - 4.0 * pi) / (8.0 * pi) - 1.0) / 2.0));
        const int fit_minus = static_cast<int>(std::floor((p_hi - 4.0 * pi) / (16.0 * pi)));
        const int n_eff = std::min({opts.n_max, fit_plus, fit_minus});
        if (n_eff < 1)
            throw std::domain_error("spectral extent too small for any momentum region");
        rep.n_max = n_eff;
        rep.pp_plus = p_p_direct(spectrum, code::Sign::plus, n_eff, rep.n_plus_sq);
        rep.pp_minus = p_p_direct(spectrum, code::Sign::minus, n_eff, rep.n_minus_sq);
        rep.tail_estimate =
            std::max(p_p_tail_estimate(spectrum, code::Sign::plus, n_eff, rep.n_plus_sq),
                     p_p_tail_estimate(spectrum, code::Sign::minus, n_eff, rep.n_minus_sq));
    } else {
        rep.momentum_route = "analytic";
        const auto mb = p_p_semianalytic(alpha, d);
        rep.overlap_01 = mb.overlap_01;
        rep.n_plus_sq = 2.0 * (1.0 + mb.overlap_01.real());
        rep.n_minus_sq = 2.0 * (1.0 - mb.overlap_01.real());
        rep.pp_plus = mb.pp_plus;
        rep.pp_minus = mb.pp_minus;
        rep.tail_estimate = 0.0;  // full-axis sum, no truncation
    }
    rep.plus_bound = p_plus_bound(alpha, d, opts.n_max);
    rep.minus_bound = p_minus_bound(alpha, d, opts.n_max);
    rep.p_max = std::max({rep.px, rep.plus_bound, rep.minus_bound});
    rep.plus_dominated = rep.pp_plus <= rep.plus_bound * (1.0 + 1e-6);
    rep.minus_dominated = rep.pp_minus <= rep.minus_bound * (1.0 + 1e-6);
    return rep;
}

std::vector<SweepRow> sweep_g0(const phys::AtomSpecies& species, double waist,
                               double g0_min, double g0_max, int points,
                               const ReportOptions& opts) {
    if (points < 2) throw std::domain_error("sweep needs at least two points");
    if (!(g0_min > 0.0) || !(g0_max > g0_min))
        throw std::domain_error("sweep range must satisfy 0 < g0_min < g0_max");
    const double big_d = phys::compute_D(species);
    std::vector<SweepRow> rows;
    rows.reserve(points);
    const double step = std::log(g0_max / g0_min) / (points - 1);
    for (int i = 0; i < points; ++i) {
        SweepRow row;
        row.g0 = g0_min * std::exp(step * i);
        row.alpha = phys::alpha_from_g0(row.g0, big_d);
        try {
            const auto setup = phys::derive_setup(species, waist, row.g0);
            const auto feas = phys::check_feasibility(setup);
            row.d = setup.half_wave_count;
            row.interaction_time = setup.interaction_time;
            row.detuning = setup.detuning;
            row.velocity = setup.velocity;
            row.feasible = feas.raman_nath_ok && feas.large_detuning_ok;
            row.note = feas.note;
            row.report = evaluate_report(row.alpha, row.d, opts);
        } catch (const std::domain_error& e) {
            row.feasible = false;
            row.note = e.what();
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.report.px = row.report.pp_plus = row.report.pp_minus = nan;
            row.report.plus_bound = row.report.minus_bound = row.report.p_max = nan;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

SweepMinimum find_minimum(const std::vector<SweepRow>& rows) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].feasible && std::isfinite(rows[i].report.p_max) &&
            rows[i].report.p_max > 0.0)
            idx.push_back(i);
    if (idx.size() < 3) throw std::domain_error("need at least three usable rows");
    std::size_t best = idx[0];
    for (std::size_t i : idx)
        if (rows[i].report.p_max < rows[best].report.p_max) best = i;
    SweepMinimum m;
    m.index = best;
    m.g0_star = rows[best].g0;
    m.p_max_star = rows[best].report.p_max;
    const auto pos = std::find(idx.begin(), idx.end(), best);
    m.bracketed = pos != idx.begin() && pos + 1 != idx.end();
    if (m.bracketed) {
        const std::size_t l = *(pos - 1), r = *(pos + 1);
        const double x0 = std::log(rows[l].g0), x1 = std::log(rows[best].g0),
                     x2 = std::log(rows[r].g0);
        const double y0 = std::log(rows[l].report.p_max),
                     y1 = std::log(rows[best].report.p_max),
                     y2 = std::log(rows[r].report.p_max);
        const double denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if (denom != 0.0) {
            const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) -
                               (x1 - x2) * (x1 - x2) * (y1 - y0);
            const double xv = x1 - 0.5 * num / denom;
            if (xv > x0 && xv < x2) {
                m.g0_star = std::exp(xv);
                // vertex value of the same parabola
                const double a =
                    ((y0 - y1) / (x0 - x1) - (y1 - y2) / (x1 - x2)) / (x0 - x2);
                const double b = (y0 - y1) / (x0 - x1) - a * (x0 + x1);
                const double c = y1 - a * x1 * x1 - b * x1;
                m.p_max_star = std::exp(a * xv * xv + b * xv + c);
            }
        }
    }
    return m;
}

}  // namespace gkp::err
