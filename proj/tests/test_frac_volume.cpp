#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "coarea/frac_volume.hpp"
#include "support/oracles.hpp"

using coarea::FractionalIncreases;
using coarea::XorShift64Star;

namespace {

FractionalIncreases make_d(std::initializer_list<double> values) {
    return FractionalIncreases(std::span<const double>(values.begin(), values.size()));
}

}  // namespace

TEST_CASE("v1d is the clamped identity") {
    CHECK(coarea::v1d(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(coarea::v1d(-0.5) == 0.0);
    CHECK(coarea::v1d(1.5) == 1.0);
}

TEST_CASE("v2d matches the three closed-form geometries") {
    const auto even = make_d({0.5, 0.5});
    CHECK(coarea::v2d(0.5, even) == doctest::Approx(0.5).epsilon(1e-15));

    // axis-aligned gradient degenerates to the fractional length
    const auto slab = make_d({0.0, 1.0});
    for (double tau : {0.1, 0.37, 0.92}) {
        CHECK(coarea::v2d(tau, slab) == doctest::Approx(tau).epsilon(1e-15));
    }

    // corner triangle, frozen from the area formula 0.5*(tau/d1)*(tau/d2)
    // and cross-checked by subgrid quadrature below
    CHECK(coarea::v2d(0.25, even) == doctest::Approx(0.125).epsilon(1e-13));
    const double quad = oracles::quadrature_v2(0.25, 0.5, 0.5, 10000);
    CHECK(quad == doctest::Approx(0.125).epsilon(1e-3));
}

TEST_CASE("v2d rejects malformed d") {
    CHECK_THROWS_AS((void)make_d({0.6, 0.4}), std::invalid_argument);   // unsorted
    CHECK_THROWS_AS((void)make_d({0.2, 0.2}), std::invalid_argument);   // unnormalized
    CHECK_THROWS_AS((void)coarea::v2d(0.5, make_d({0.2, 0.3, 0.5})), std::invalid_argument);
}

TEST_CASE("v3d spot values") {
    const auto even = make_d({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    CHECK(coarea::v3d(0.5, even) == doctest::Approx(0.5).epsilon(1e-14));

    // corner simplex tau^3/(6 d1 d2 d3) = 0.001/0.18; verified against the
    // patterned form and the Monte-Carlo oracle
    const auto d = make_d({0.2, 0.3, 0.5});
    const double expected = 1.0 / 180.0;
    CHECK(coarea::v3d(0.1, d) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(oracles::patterned_v3(0.1, 0.2, 0.3, 0.5) == doctest::Approx(expected).epsilon(1e-13));
    XorShift64Star rng(42);
    const double d_raw[] = {0.2, 0.3, 0.5};
    const double mc = oracles::mc_fractional_volume(0.1, d_raw, 2'000'000, rng);
    CHECK(std::abs(mc - expected) < 4.0 * oracles::mc_sigma(expected, 2'000'000));

    // double zero reduces to the fractional length
    const auto line = make_d({0.0, 0.0, 1.0});
    for (double tau : {0.2, 0.77}) {
        CHECK(coarea::v3d(tau, line) == doctest::Approx(tau).epsilon(1e-15));
    }
}

TEST_CASE("v3d agrees with the patterned inclusion-exclusion form") {
    XorShift64Star rng(7);
    for (int it = 0; it < 3000; ++it) {
        const auto d = oracles::random_increases(3, rng, 0.05);
        const auto fi = FractionalIncreases(std::span<const double>(d));
        const double tau = rng.next_unit();
        CHECK(coarea::v3d(tau, fi) ==
              doctest::Approx(oracles::patterned_v3(tau, d[0], d[1], d[2])).epsilon(1e-11));
    }
}

TEST_CASE("vnd reproduces the closed forms") {
    XorShift64Star rng(11);
    for (int it = 0; it < 2000; ++it) {
        const double tau = rng.next_unit();
        {
            const auto d = oracles::random_increases(2, rng, 1e-3);
            const auto fi = FractionalIncreases(std::span<const double>(d));
            CHECK(coarea::vnd(tau, fi) == doctest::Approx(coarea::v2d(tau, fi)).epsilon(1e-12));
        }
        {
            const auto d = oracles::random_increases(3, rng, 1e-3);
            const auto fi = FractionalIncreases(std::span<const double>(d));
            CHECK(coarea::vnd(tau, fi) == doctest::Approx(coarea::v3d(tau, fi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("vnd handles 4D and zero stripping") {
    const auto even4 = make_d({0.25, 0.25, 0.25, 0.25});
    CHECK(coarea::vnd(0.5, even4) == doctest::Approx(0.5).epsilon(1e-13));

    // zero entries are removed before the inclusion-exclusion
    const auto padded = make_d({0.0, 0.2, 0.3, 0.5});
    const auto bare = make_d({0.2, 0.3, 0.5});
    for (double tau : {0.05, 0.3, 0.6, 0.95}) {
        CHECK(coarea::vnd(tau, padded) == doctest::Approx(coarea::vnd(tau, bare)).epsilon(1e-13));
    }

    const auto zero = make_d({0.0, 0.0});
    CHECK_THROWS_AS((void)coarea::vnd(0.5, zero), std::invalid_argument);
}

TEST_CASE("vnd against the Monte-Carlo oracle in 4D") {
    XorShift64Star rng(13);
    for (int it = 0; it < 10; ++it) {
        const auto d = oracles::random_increases(4, rng, 0.02);
        const auto fi = FractionalIncreases(std::span<const double>(d));
        const double tau = 0.1 + 0.8 * rng.next_unit();
        const double exact = coarea::vnd(tau, fi);
        const double mc = oracles::mc_fractional_volume(tau, d, 1'000'000, rng);
        CHECK(std::abs(mc - exact) < 4.0 * oracles::mc_sigma(exact, 1'000'000));
    }
}

TEST_CASE("boundary, monotonicity and central symmetry") {
    XorShift64Star rng(17);
    for (std::size_t n = 2; n <= 4; ++n) {
        for (int it = 0; it < 300; ++it) {
            const auto d = oracles::random_increases(n, rng, 1e-3);
            const auto fi = FractionalIncreases(std::span<const double>(d));
            auto eval = [&](double tau) { return coarea::fractional_volume(tau, fi); };

            CHECK(eval(0.0) == 0.0);
            CHECK(eval(1.0) == 1.0);

            const double a = rng.next_unit();
            const double b = rng.next_unit();
            CHECK(eval(std::min(a, b)) <= eval(std::max(a, b)) + 1e-15);

            const double tau = rng.next_unit();
            CHECK(eval(tau) + eval(1.0 - tau) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("derivatives: frozen cases") {
    const auto d28 = make_d({0.2, 0.8});
    CHECK(coarea::dv2d(0.5, d28) == doctest::Approx(1.25).epsilon(1e-15));   // 1/d2
    CHECK(coarea::dv2d(2.0, d28) == 0.0);
    CHECK(coarea::dv2d(-0.1, d28) == 0.0);
    // tau below d1: (tau/d1)/d2, cross-checked by finite differences
    CHECK(coarea::dv2d(0.1, d28) == doctest::Approx(0.625).epsilon(1e-13));
    const double fd2 = oracles::central_difference(
        [&](double t) { return coarea::v2d(t, d28); }, 0.1, 1e-6);
    CHECK(fd2 == doctest::Approx(0.625).epsilon(1e-6));

    const auto d127 = make_d({0.1, 0.2, 0.7});
    CHECK(coarea::dv3d(0.5, d127) == doctest::Approx(1.0 / 0.7).epsilon(1e-13));  // slab case
    CHECK(coarea::dv3d(1.5, d127) == 0.0);

    const auto d235 = make_d({0.2, 0.3, 0.5});
    const double expected = 0.0025 / 0.06;  // tau^2/(2 d1 d2 d3)
    CHECK(coarea::dv3d(0.05, d235) == doctest::Approx(expected).epsilon(1e-13));
    const double fd3 = oracles::central_difference(
        [&](double t) { return coarea::v3d(t, d235); }, 0.05, 1e-6);
    CHECK(fd3 == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("derivatives match finite differences away from transitions") {
    XorShift64Star rng(23);
    int done = 0;
    while (done < 500) {
        const auto d = oracles::random_increases(3, rng, 0.05);
        const double tau = 0.02 + 0.96 * rng.next_unit();
        const double transitions[] = {d[0], d[1], d[2], d[0] + d[1], d[0] + d[2], d[1] + d[2]};
        bool near = false;
        for (double t : transitions) near = near || std::abs(tau - t) < 1e-4;
        if (near) continue;
        ++done;

        const auto fi = FractionalIncreases(std::span<const double>(d));
        const double dv = coarea::dv3d(tau, fi);
        const double fd = oracles::central_difference(
            [&](double t) { return coarea::v3d(t, fi); }, tau, 1e-6);
        CHECK(std::abs(fd - dv) <= 1e-5 * std::max(1.0, std::abs(dv)));
    }
}

TEST_CASE("continuity at case transitions") {
    XorShift64Star rng(29);
    const double h = 1e-9;
    for (int it = 0; it < 200; ++it) {
        const auto d = oracles::random_increases(3, rng, 0.05);
        const auto fi = FractionalIncreases(std::span<const double>(d));
        const double transitions[] = {d[0], d[1], d[2], d[0] + d[1], d[0] + d[2], d[1] + d[2]};
        for (double t : transitions) {
            if (t - h <= 0.0 || t + h >= 1.0) continue;
            const double lo = coarea::v3d(t - h, fi);
            const double hi = coarea::v3d(t + h, fi);
            // subtract the smooth motion so only a jump would remain
            const double motion = h * (coarea::dv3d(t - h, fi) + coarea::dv3d(t + h, fi));
            CHECK(std::abs(hi - lo - motion) <= 1e-10);
        }
    }
}

TEST_CASE("fractional_volume dispatch and the derivative limits") {
    const auto d1 = make_d({1.0});
    CHECK(coarea::fractional_volume(0.4, d1) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(coarea::fractional_volume_derivative(0.4, d1) == 1.0);
    const auto d4 = make_d({0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS((void)coarea::fractional_volume_derivative(0.5, d4), std::invalid_argument);
}
