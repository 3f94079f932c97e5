#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkp/error_analysis.hpp"

using namespace gkp;
using std::numbers::pi;

namespace {

lith::GridSpec dense_grid(int d, int k) {
    lith::GridSpec gs;
    gs.dy = (pi / 4.0) / std::pow(2.0, k);
    std::size_t need = static_cast<std::size_t>(std::ceil((pi * d + pi / 4) / gs.dy)) + 1;
    std::size_t n = 1;
    while (n < need) n <<= 1;
    gs.n = n;
    return gs;
}

}  // namespace

TEST_CASE("closed-form position error probability") {
    // alpha = 0 collapses to (4d-1)/(8d)
    CHECK(err::p_x_closed_form(0.0, 20) == doctest::Approx(79.0 / 160.0).epsilon(1e-14));
    CHECK(err::p_x_closed_form(0.0, 4) == doctest::Approx(15.0 / 32.0).epsilon(1e-14));
    CHECK(err::p_x_closed_form(0.5, 20) ==
          doctest::Approx(0.41684556611195833).epsilon(1e-9));
    CHECK(err::p_x_closed_form(1.0, 20) ==
          doctest::Approx(0.20389535482643575).epsilon(1e-9));
    CHECK(err::p_x_closed_form(2.0, 20) ==
          doctest::Approx(0.0019311701128616853).epsilon(1e-9));
    CHECK(err::p_x_closed_form(2.4, 20) ==
          doctest::Approx(9.262725899412662e-05).epsilon(1e-9));
    CHECK(err::p_x_closed_form(3.0, 20) ==
          doctest::Approx(3.5053544541643756e-07).epsilon(1e-9));
    CHECK(err::p_x_closed_form(2.4, 4) ==
          doctest::Approx(8.793727119695563e-05).epsilon(1e-9));
    CHECK(err::p_x_closed_form(1.0, 4) ==
          doctest::Approx(0.19357153939218583).epsilon(1e-9));
}

TEST_CASE("P_x strictly decreasing in alpha") {
    double prev = 1.0;
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
        const double v = err::p_x_closed_form(a, 20);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("region sum matches the closed form") {
    for (double a : {0.0, 1.0, 2.4}) {
        for (int d : {4, 20}) {
            const auto g = lith::conditional_wavefunction(a, d, 0.0, dense_grid(d, 16));
            const double rs = err::p_x_region_sum(g.wf, code::position_error_regions(d));
            const double cf = err::p_x_closed_form(a, d);
            CHECK(rs == doctest::Approx(cf).epsilon(1e-8));
        }
    }
}

TEST_CASE("the displaced codeword errs on the complementary regions") {
    const int d = 4;
    const auto g = lith::conditional_wavefunction(2.4, d, 0.0, dense_grid(d, 14));
    auto phi1 = lith::displace(g.wf, pi / 4.0);
    // error regions of the one-codeword: centers at odd multiples of pi/4
    code::ErrorRegionSet ones;
    ones.space = code::Space::position;
    for (int n = 0; n <= 2 * d - 1; ++n)
        ones.intervals.push_back(
            {(4.0 * n + 1.0) * pi / 8.0, (4.0 * n + 3.0) * pi / 8.0, n});
    const double p1 = err::p_x_region_sum(phi1, ones);
    const double p0 = err::p_x_region_sum(g.wf, code::position_error_regions(d));
    CHECK(p1 == doctest::Approx(p0).epsilon(1e-6));
}

TEST_CASE("region outside the grid is refused") {
    const auto g = lith::conditional_wavefunction(2.4, 4, 0.0);
    CHECK_THROWS(err::p_x_region_sum(g.wf, code::position_error_regions(400)));
}

TEST_CASE("momentum branches from the grid spectrum") {
    const auto g = lith::conditional_wavefunction(2.4, 20, 0.0);
    const auto sp = spec::momentum_wavefunction(g.wf, 8);
    const auto ov = lith::overlap(g.wf, lith::displace(g.wf, pi / 4.0));
    const double npsq = 2.0 * (1.0 + ov.real());
    const double nmsq = 2.0 * (1.0 - ov.real());
    const double pp = err::p_p_direct(sp, code::Sign::plus, 50, npsq);
    const double pm = err::p_p_direct(sp, code::Sign::minus, 50, nmsq);
    // independently computed reference values for this configuration
    CHECK(pp == doctest::Approx(0.23676).epsilon(2e-3));
    CHECK(pm == doctest::Approx(0.23779).epsilon(2e-3));
    CHECK(err::p_p_tail_estimate(sp, code::Sign::plus, 50, npsq) < 1e-3 * pp);
    // insufficient extent for an absurd region count
    CHECK_THROWS(err::p_p_direct(sp, code::Sign::plus, 100000, npsq));
}

TEST_CASE("autocorrelation route agrees with the spectrum route") {
    struct Ref {
        double alpha;
        int d;
        double pp_plus, pp_minus;  // fast-transform references
    };
    // references from padded transforms at padding 16
    for (const auto& r : {Ref{2.4, 4, 0.218550, 0.217169},
                          Ref{2.4, 20, 0.2367623, 0.2377877}}) {
        const auto mb = err::p_p_semianalytic(r.alpha, r.d);
        CHECK(mb.pp_plus == doctest::Approx(r.pp_plus).epsilon(2e-3));
        CHECK(mb.pp_minus == doctest::Approx(r.pp_minus).epsilon(2e-3));
    }
    // regression-pinned exact values
    const auto mb = err::p_p_semianalytic(2.4, 20);
    CHECK(mb.pp_plus == doctest::Approx(0.23669727430452492).epsilon(1e-6));
    CHECK(mb.pp_minus == doctest::Approx(0.23776791514998133).epsilon(1e-6));
    CHECK(mb.overlap_01.real() == doctest::Approx(0.0023160201145).epsilon(1e-6));
}

TEST_CASE("overlap via autocorrelation matches the grid overlap") {
    const auto g = lith::conditional_wavefunction(2.4, 20, 0.0);
    const auto grid_ov = lith::overlap(g.wf, lith::displace(g.wf, pi / 4.0));
    const auto ana_ov = err::overlap_01(2.4, 20);
    CHECK(std::abs(grid_ov - ana_ov) < 1e-3 * std::abs(ana_ov) + 1e-9);
}

TEST_CASE("envelope bounds") {
    CHECK(err::p_plus_bound(2.4, 20, 50) ==
          doctest::Approx(0.032809444417961096).epsilon(1e-6));
    CHECK(err::p_minus_bound(2.4, 20, 50) ==
          doctest::Approx(0.11614070781611387).epsilon(1e-6));
    // with overlap -> 0 both normalization prefactors -> 2: the two bounds
    // then differ only through their region geometry
    const auto ov = err::overlap_01(2.4, 20);
    CHECK(std::abs(ov.real()) < 0.01);
}

TEST_CASE("bound truncation converges below the tail cap") {
    const double alpha = 2.4;
    const int d = 20;
    const double n0_sq = 2.0 * pi / (d * lith::j_integral(alpha, 0.0));
    const auto ov = err::overlap_01(alpha, d);
    const double plus_cap = 16.0 / pi * n0_sq / (2.0 * (1.0 + ov.real())) * 2.0 /
                            ((4.0 * 50 + 5.0) * 4.0 * pi);
    const double minus_cap = 8.0 / pi * n0_sq / (2.0 * (1.0 - ov.real())) * 4.0 /
                             ((4.0 * 50 + 3.0) * 4.0 * pi);
    CHECK(std::abs(err::p_plus_bound(alpha, d, 100) - err::p_plus_bound(alpha, d, 50)) <
          plus_cap);
    CHECK(std::abs(err::p_minus_bound(alpha, d, 100) - err::p_minus_bound(alpha, d, 50)) <
          minus_cap);
}

TEST_CASE("exact and mean-value bound routes line up at the crossover") {
    // d <= 512 integrates the oscillation, larger d takes the averaged form;
    // the bound scales like 1/d near the crossover, so compare d * bound
    const double a = 3.9;
    const double left = 512.0 * err::p_plus_bound(a, 512, 50);
    const double right = 516.0 * err::p_plus_bound(a, 516, 50);
    CHECK(left == doctest::Approx(right).epsilon(0.02));
    const double leftm = 512.0 * err::p_minus_bound(a, 512, 50);
    const double rightm = 516.0 * err::p_minus_bound(a, 516, 50);
    CHECK(leftm == doctest::Approx(rightm).epsilon(0.02));
}

TEST_CASE("report assembly") {
    const auto rep = err::evaluate_report(0.0, 20);
    CHECK(rep.px == doctest::Approx(79.0 / 160.0).epsilon(1e-12));
    CHECK(rep.p_max == std::max({rep.px, rep.plus_bound, rep.minus_bound}));
    // the minus-branch normalization nearly vanishes for the uniform state
    // (<0|1> = 0.9375), so its envelope bound blows up and clamps to 1
    CHECK(rep.minus_bound == 1.0);
    CHECK(rep.momentum_route == "spectrum");

    const auto rep2 = err::evaluate_report(2.4, 200);
    CHECK(rep2.momentum_route == "analytic");
    CHECK(rep2.pp_plus == doctest::Approx(0.244361).epsilon(2e-3));
    CHECK(rep2.pp_minus == doctest::Approx(0.245513).epsilon(2e-3));
    CHECK(rep2.tail_estimate == 0.0);
}

TEST_CASE("sweep rows") {
    const auto rows = err::sweep_g0(phys::cesium(), 20e-6, 5e6, 5e8, 9);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].alpha > rows[i - 1].alpha);
        CHECK(rows[i].alpha ==
              doctest::Approx(std::cbrt(rows[i].g0 / 1299098.60548)).epsilon(1e-9));
        if (rows[i].feasible && rows[i - 1].feasible) {
            CHECK(rows[i].d <= rows[i - 1].d);
            CHECK(rows[i].report.px < rows[i - 1].report.px);
            CHECK(rows[i].report.plus_bound > rows[i - 1].report.plus_bound);
            CHECK(rows[i].report.minus_bound > rows[i - 1].report.minus_bound);
        }
    }
    CHECK_THROWS(err::sweep_g0(phys::cesium(), 20e-6, 1e6, 1e6, 10));
    CHECK_THROWS(err::sweep_g0(phys::cesium(), 20e-6, 1e6, 1e9, 1));
}

TEST_CASE("infeasible rows are kept and flagged") {
    const auto rows = err::sweep_g0(phys::cesium(), 20e-6, 1e12, 1e13, 3);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(!r.feasible);
        CHECK(std::isnan(r.report.p_max));
        CHECK(!r.note.empty());
    }
}

TEST_CASE("minimum finder") {
    // synthetic parabola in (log g0, log Pmax): exact vertex recovery
    std::vector<err::SweepRow> rows(7);
    const double c = std::log(4e7);
    for (int i = 0; i < 7; ++i) {
        rows[i].g0 = std::exp(std::log(1e7) + 0.4 * i);
        rows[i].feasible = true;
        const double x = std::log(rows[i].g0);
        rows[i].report.p_max = std::exp(2.0 * (x - c) * (x - c) - 8.0);
    }
    const auto m = err::find_minimum(rows);
    CHECK(m.bracketed);
    CHECK(std::log(m.g0_star) == doctest::Approx(c).epsilon(1e-9));
    CHECK(m.p_max_star == doctest::Approx(std::exp(-8.0)).epsilon(1e-9));

    // monotone data pins the minimum to an edge
    for (int i = 0; i < 7; ++i) rows[i].report.p_max = 1e-3 * (i + 1);
    const auto edge = err::find_minimum(rows);
    CHECK(!edge.bracketed);
    CHECK(edge.index == 0);
}
