#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "gkp/lithography.hpp"
#include "gkp/spectral.hpp"

using namespace gkp;
using spec::cplx;
using std::numbers::pi;

TEST_CASE("fft basics") {
    std::vector<cplx> impulse(8, cplx{0, 0});
    impulse[0] = {1, 0};
    spec::fft_pow2(impulse);
    for (auto v : impulse) CHECK(std::abs(v - cplx{1, 0}) < 1e-14);

    // single tone lands in a single bin
    std::vector<cplx> tone(16);
    for (int j = 0; j < 16; ++j) tone[j] = std::polar(1.0, 2.0 * pi * 3 * j / 16.0);
    spec::fft_pow2(tone);
    CHECK(std::abs(tone[3] - cplx{16, 0}) < 1e-12);
    for (int k = 0; k < 16; ++k)
        if (k != 3) CHECK(std::abs(tone[k]) < 1e-12);

    std::vector<cplx> bad(12);
    CHECK_THROWS(spec::fft_pow2(bad));
}

TEST_CASE("Parseval") {
    const auto g = lith::conditional_wavefunction(2.4, 20, 0.0);
    const auto sp = spec::momentum_wavefunction(g.wf, 8);
    CHECK(sp.norm() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sp.dp == doctest::Approx(4.0 * pi * pi / (g.wf.amps.size() * 8 * g.wf.dy)));
}

TEST_CASE("refusals") {
    lith::SampledWaveFunction wf;
    wf.dy = 0.01;
    wf.amps.assign(100, cplx{0.1, 0});  // not a power of two
    CHECK_THROWS(spec::momentum_wavefunction(wf, 8));
    wf.amps.assign(128, cplx{0.1, 0});
    CHECK_THROWS(spec::momentum_wavefunction(wf, 3));  // bad padding
}

TEST_CASE("shift theorem") {
    const auto g = lith::conditional_wavefunction(2.4, 4, 0.0);
    const auto base = spec::momentum_wavefunction(g.wf, 4);
    const double s = pi / 4.0;
    const auto moved = spec::momentum_wavefunction(lith::displace(g.wf, s), 4);
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const cplx expect = base.psi[i] * std::polar(1.0, -base.p[i] * s / (2.0 * pi));
        worst = std::max(worst, std::abs(moved.psi[i] - expect));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("phase relation between the codeword pair") {
    const auto g = lith::conditional_wavefunction(2.4, 20, 0.0);
    const auto psi0 = spec::momentum_wavefunction(g.wf, 8);
    const auto psi1 = spec::momentum_wavefunction(lith::displace(g.wf, pi / 4.0), 8);
    CHECK(spec::check_phase_relation(psi0, psi1) < 1e-8);
    CHECK(spec::check_phase_relation(psi0, psi0, 0.0) == 0.0);
}

TEST_CASE("padding convergence") {
    const auto g = lith::conditional_wavefunction(2.4, 4, 0.0);
    const auto coarse = spec::momentum_wavefunction(g.wf, 8);
    const auto fine = spec::momentum_wavefunction(g.wf, 16);
    CHECK(fine.dp == doctest::Approx(coarse.dp / 2.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const cplx f = fine.at(coarse.p[i]);
        worst = std::max(worst, std::abs(std::norm(coarse.psi[i]) - std::norm(f)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("direct quadrature agrees with the grid transform") {
    const auto g = lith::conditional_wavefunction(2.4, 4, 0.0);
    const auto sp = spec::momentum_wavefunction(g.wf, 4);
    std::mt19937_64 rng(2024);
    const std::size_t mid = sp.size() / 2;
    const std::size_t span = static_cast<std::size_t>(40.0 * pi / sp.dp);
    std::uniform_int_distribution<std::size_t> pick(mid - span, mid + span);
    for (int k = 0; k < 64; ++k) {
        const std::size_t i = pick(rng);
        const cplx direct = spec::momentum_amplitude_direct(g.wf, sp.p[i]);
        // the grid transform carries O(dy^2) trapezoid error of ~1e-6 here
        CHECK(std::abs(direct - sp.psi[i]) < 5e-6);
    }
}

TEST_CASE("direct transform of the uniform state") {
    const int d = 4;
    const auto g = lith::conditional_wavefunction(0.0, d, 0.0);
    const double L = d / 2.0;
    const cplx at0 = spec::momentum_amplitude_direct(g.wf, 0.0);
    CHECK(std::abs(at0 - cplx{std::sqrt(L / (2.0 * pi)), 0.0}) < 1e-9);
    // real wavefunction: psi(-p) = conj(psi(p))
    const cplx plus = spec::momentum_amplitude_direct(g.wf, 11.0);
    const cplx minus = spec::momentum_amplitude_direct(g.wf, -11.0);
    CHECK(std::abs(plus - std::conj(minus)) < 1e-9);
}

TEST_CASE("envelope bound") {
    const double n0_sq = 0.9, L = 10.0;
    CHECK(spec::envelope_bound(0.0, n0_sq, L) ==
          doctest::Approx(n0_sq * L * L / pi).epsilon(1e-9));
    CHECK(spec::envelope_bound(1e-9, n0_sq, L) ==
          doctest::Approx(n0_sq * L * L / pi).epsilon(1e-6));
    for (int m = 1; m < 5; ++m)
        CHECK(spec::envelope_bound(2.0 * pi * m / L, n0_sq, L) < 1e-12);
}
