#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gkp/ideal_code.hpp"

using namespace gkp::code;
using std::numbers::pi;

TEST_CASE("spike lattices") {
    const double th = 0.125;
    auto z = ideal_spike_lattice(Label::zero, Space::position, th);
    CHECK(z.period == doctest::Approx(2 * th));
    CHECK(z.offset == 0.0);
    auto o = ideal_spike_lattice(Label::one, Space::position, th);
    CHECK(o.offset == doctest::Approx(th));
    auto p = ideal_spike_lattice(Label::plus, Space::position, th);
    CHECK(p.period == doctest::Approx(th));
    CHECK(!p.alternating);
    auto m = ideal_spike_lattice(Label::minus, Space::position, th);
    CHECK(m.alternating);

    // momentum: 0/1 share the pi/theta lattice, 1 with alternating signs;
    // +/- live on the doubled lattice, - offset by pi/theta
    auto zm = ideal_spike_lattice(Label::zero, Space::momentum, th);
    CHECK(zm.period == doctest::Approx(pi / th));
    auto om = ideal_spike_lattice(Label::one, Space::momentum, th);
    CHECK(om.alternating);
    auto pm = ideal_spike_lattice(Label::plus, Space::momentum, th);
    CHECK(pm.period == doctest::Approx(2 * pi / th));
    auto mm = ideal_spike_lattice(Label::minus, Space::momentum, th);
    CHECK(mm.offset == doctest::Approx(pi / th));
}

TEST_CASE("position recovery") {
    auto r = recover_position(pi / 4.0 + 0.01);
    CHECK(r.corrected == doctest::Approx(pi / 4.0));
    CHECK(r.shift == doctest::Approx(0.01));
    CHECK(r.correctable);
    // idempotence: recovering a corrected value applies no further shift
    auto r2 = recover_position(r.corrected);
    CHECK(r2.shift == doctest::Approx(0.0));
    CHECK(r2.corrected == doctest::Approx(r.corrected));
}

TEST_CASE("recovery boundary ties") {
    auto r = recover_position(pi / 8.0);  // exactly midway
    CHECK(r.boundary);
    CHECK(!r.correctable);
    CHECK(r.corrected == doctest::Approx(0.0));  // tie toward the lower point
}

TEST_CASE("momentum recovery spacing") {
    auto r = recover_momentum(8.0 * pi + 1.0);
    CHECK(r.corrected == doctest::Approx(8.0 * pi));
    CHECK(r.correctable);
    auto far = recover_momentum(12.5);  // nearer to 8 pi than to 0? 12.5 < 4 pi
    CHECK(far.corrected == doctest::Approx(0.0));
}

TEST_CASE("position error regions") {
    const int d = 4;
    auto set = position_error_regions(d);
    CHECK(set.intervals.size() == 2 * d);
    CHECK(set.intervals.front().lo == doctest::Approx(3.0 * pi / 8.0));
    CHECK(set.intervals.back().hi == doctest::Approx(pi * d));
    // total measure: 2d-1 full pi/4 regions plus one half region
    CHECK(set.total_measure() ==
          doctest::Approx((2 * d - 1) * pi / 4.0 + pi / 8.0));
    auto sym = position_error_regions(d, true);
    CHECK(sym.intervals.size() == 2 * d + 1);
    CHECK(sym.intervals.front().lo == 0.0);
}

TEST_CASE("momentum error regions") {
    auto plus = momentum_error_regions(Sign::plus, 2);
    CHECK(plus.intervals.size() == 5);
    CHECK(plus.intervals[2].lo == doctest::Approx(8.0 * pi - 4.0 * pi));
    auto minus = momentum_error_regions(Sign::minus, 2);
    CHECK(minus.intervals[2].lo == doctest::Approx(-4.0 * pi));
    CHECK(minus.contains(0.0));
    CHECK(!plus.contains(0.0));
}

TEST_CASE("regions and recovery are dual") {
    // a measured y inside an error region decodes to an even multiple of
    // pi/4 (the wrong sublattice for the zero codeword), outside to an odd one
    const int d = 20;
    auto set = position_error_regions(d);
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> u(pi / 8.0, pi * d);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const double y = u(rng);
        auto r = recover_position(y);
        if (r.boundary) continue;
        const long long idx = std::llround(r.corrected / (pi / 4.0));
        CHECK(set.contains(y) == (idx % 2 == 0));
        ++checked;
    }
    CHECK(checked > 9900);
}
