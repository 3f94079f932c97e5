#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "gkp/kernels.hpp"

using gkp::kern::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = {u(rng), u(rng)};
    return v;
}

}  // namespace

TEST_CASE("scalar backend basics") {
    const auto& s = gkp::kern::scalar_backend();
    std::vector<cplx> a{{1, 0}, {0, 2}, {3, 4}};
    // half weights on the ends: 0.5*1 + 4 + 0.5*25
    CHECK(s.norm_trapezoid(a.data(), a.size()) == doctest::Approx(17.0));
    std::vector<cplx> b{{2, 0}, {0, 1}, {1, 0}};
    const cplx d = s.dot_trapezoid(a.data(), b.data(), a.size());
    CHECK(d.real() == doctest::Approx(0.5 * 2 + 2 + 0.5 * 3));
    CHECK(d.imag() == doctest::Approx(0.5 * 0 + 0 + 0.5 * (-4)));
}

#if defined(__x86_64__)
TEST_CASE("avx2 matches scalar on random data") {
    if (!gkp::kern::avx2_available()) {
        MESSAGE("AVX2 not available on this host; equivalence skipped");
        return;
    }
    const auto& s = gkp::kern::scalar_backend();
    const auto& v = gkp::kern::avx2_backend();
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 256u, 1001u, 4096u}) {
        auto a = random_vec(n, 11 + static_cast<unsigned>(n));
        auto b = random_vec(n, 77 + static_cast<unsigned>(n));
        CHECK(s.norm_trapezoid(a.data(), n) ==
              doctest::Approx(v.norm_trapezoid(a.data(), n)).epsilon(1e-13));
        const cplx ds = s.dot_trapezoid(a.data(), b.data(), n);
        const cplx dv = v.dot_trapezoid(a.data(), b.data(), n);
        CHECK(std::abs(ds - dv) < 1e-12 * (1.0 + std::abs(ds)));

        auto as = a, av = a;
        s.scale(as.data(), n, 0.37);
        v.scale(av.data(), n, 0.37);
        for (std::size_t i = 0; i < n; ++i) CHECK(as[i] == av[i]);

        std::vector<cplx> outs(n), outv(n);
        const cplx ca{0.3, -0.7}, cb{-1.1, 0.2};
        s.add_scaled(outs.data(), a.data(), ca, b.data(), cb, n);
        v.add_scaled(outv.data(), a.data(), ca, b.data(), cb, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(outs[i] - outv[i]) < 1e-14);

        std::vector<double> abs_s(n), abs_v(n);
        s.abs_squared(a.data(), abs_s.data(), n);
        v.abs_squared(a.data(), abs_v.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(abs_s[i] == doctest::Approx(abs_v[i]).epsilon(1e-14));
    }
}
#endif

TEST_CASE("dot conjugate symmetry") {
    const auto& k = gkp::kern::active();
    auto a = random_vec(129, 5);
    auto b = random_vec(129, 6);
    const cplx ab = k.dot_trapezoid(a.data(), b.data(), a.size());
    const cplx ba = k.dot_trapezoid(b.data(), a.data(), a.size());
    CHECK(std::abs(ab - std::conj(ba)) < 1e-13);
}

TEST_CASE("active backend reports a name") {
    const auto name = gkp::kern::active_name();
    CHECK((name == "scalar" || name == "avx2"));
}
