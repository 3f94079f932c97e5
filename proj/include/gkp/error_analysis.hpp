#pragma once

#include <complex>
#include <string>
#include <vector>

#include "gkp/ideal_code.hpp"
#include "gkp/lithography.hpp"
#include "gkp/physical_model.hpp"
#include "gkp/spectral.hpp"

// Intrinsic error probabilities of the approximate codewords: the position
// branch P_x, the momentum branches P_{p,+/-}, their analytic envelope bounds
// P_+/-, the combined figure P_max, and the coupling sweep that locates its
// minimum over g0.

namespace gkp::err {

using cplx = std::complex<double>;

struct IntrinsicErrorReport {
    double px = 0.0;
    double pp_plus = 0.0;
    double pp_minus = 0.0;
    double plus_bound = 0.0;
    double minus_bound = 0.0;
    double p_max = 0.0;
    int n_max = 0;
    double tail_estimate = 0.0;    // truncation tail of the momentum sums
    double quad_rel_tol = 0.0;
    cplx overlap_01{0.0, 0.0};
    double n_plus_sq = 0.0;        // 2(1 + Re<0|1>)
    double n_minus_sq = 0.0;
    std::string momentum_route;    // "spectrum" or "analytic"
    // Whether the computed momentum probabilities sit below their envelope
    // bounds. Recorded as data; see the acceptance suite for the discussion.
    bool plus_dominated = false;
    bool minus_dominated = false;
};

// Closed form P_x = (4d-1) N0^2/(2 pi) int_0^{pi/8} exp[-2 alpha_1(y)^2] dy
// with N0^2 = 2 pi / (d J(alpha, 0)).
double p_x_closed_form(double alpha, int d);

// Direct region sum: trapezoid of |phi|^2/(2 pi) over every interval of the
// region set (fractional end cells). Refuses regions outside the grid.
double p_x_region_sum(const lith::SampledWaveFunction& wf,
                      const code::ErrorRegionSet& regions);

// P_{p,+/-} = (2/Nsq) sum_n int_{R_n} (1 +/- cos(p/8)) |psi_0(p)|^2 dp from a
// computed spectrum of phi_0. Refuses when the spectrum does not cover the
// outermost region for the requested n_max.
double p_p_direct(const spec::MomentumSpectrum& spectrum, code::Sign sign,
                  int n_max, double n_sq);

// Upper cap on the mass omitted beyond the n_max-th region (weight <= 2).
double p_p_tail_estimate(const spec::MomentumSpectrum& spectrum, code::Sign sign,
                         int n_max, double n_sq);

// Exact momentum branches via the band-limited autocorrelation route: the
// weight (1 +/- cos(p/8)) chi_+/-(p) is 16pi-periodic, so the full-axis sum
// reduces to Fourier coefficients against the position autocorrelation of
// phi_0, which is supported on |shift| <= 1/2 period. O(d), no grids, no
// truncation; used for sweep rows where spectra are impractical.
struct MomentumBranches {
    double pp_plus = 0.0;
    double pp_minus = 0.0;
    cplx overlap_01{0.0, 0.0};
};
MomentumBranches p_p_semianalytic(double alpha, int d);

// Codeword overlap <0|1> by the same autocorrelation route.
cplx overlap_01(double alpha, int d);

// Envelope bounds: partial region sums of the 1/p^2-enveloped integrals plus
// a rigorous analytic tail cap, so the results stay upper bounds under
// truncation. Capped at 1 (a probability bound above 1 carries no content).
double p_plus_bound(double alpha, int d, int n_max);
double p_minus_bound(double alpha, int d, int n_max);

struct ReportOptions {
    int n_max = 50;
    std::size_t padding = 8;
    // Grid spectra only below this d; above it the autocorrelation route.
    int spectrum_d_cutoff = 64;
};

IntrinsicErrorReport evaluate_report(double alpha, int d,
                                     const ReportOptions& opts = {});

struct SweepRow {
    double g0 = 0.0;
    double alpha = 0.0;
    int d = 0;
    double interaction_time = 0.0;
    double detuning = 0.0;
    double velocity = 0.0;
    bool feasible = false;
    std::string note;
    IntrinsicErrorReport report;   // NaN-filled when geometry is infeasible
};

std::vector<SweepRow> sweep_g0(const phys::AtomSpecies& species, double waist,
                               double g0_min, double g0_max, int points,
                               const ReportOptions& opts = {});

struct SweepMinimum {
    double g0_star = 0.0;
    double p_max_star = 0.0;
    std::size_t index = 0;
    bool bracketed = false;        // false when the argmin sits on a range edge
};

// Argmin of P_max over feasible rows, refined by a parabola through the three
// surrounding (log g0, log P_max) points when interior.
SweepMinimum find_minimum(const std::vector<SweepRow>& rows);

}  // namespace gkp::err
