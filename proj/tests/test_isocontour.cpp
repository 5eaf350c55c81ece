#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "coarea/grid.hpp"
#include "coarea/isocontour.hpp"

using coarea::extract_isocontour;
using coarea::GridSpec;
using coarea::integrate_over_segments;
using coarea::ScalarField;
using coarea::SegmentSoup;

namespace {

ScalarField plane_field(const GridSpec& spec) {
    std::vector<double> vals(spec.point_count());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < spec.dim(0); ++i) {
        for (std::size_t j = 0; j < spec.dim(1); ++j, ++idx) {
            vals[idx] = spec.coord(0, i);
        }
    }
    return ScalarField(spec, std::move(vals));
}

}  // namespace

TEST_CASE("planar field gives one straight polyline") {
    const GridSpec spec = GridSpec::cube(2, 0.0, 4.0, 1.0);
    const ScalarField psi = plane_field(spec);
    const SegmentSoup soup = extract_isocontour(psi, 0.5);
    // vertical line at coordinate 0.5 spanning the full height
    CHECK(soup.total_length() == doctest::Approx(4.0).epsilon(1e-12));
    for (const auto& s : soup.segments) {
        CHECK(s.a0 == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(s.b0 == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("level below the minimum yields an empty soup") {
    const GridSpec spec = GridSpec::cube(2, 0.0, 4.0, 1.0);
    const SegmentSoup soup = extract_isocontour(plane_field(spec), -3.0);
    CHECK(soup.segments.empty());
}

TEST_CASE("circle contour length approaches the circumference") {
    const GridSpec spec = GridSpec::cube(2, -5.0, 5.0, 0.025);
    const double center[] = {0.0, 0.0};
    const ScalarField psi = coarea::make_circle_sdf(spec, center, 1.0, false);
    const SegmentSoup soup = extract_isocontour(psi, 0.0);
    const double two_pi = 2.0 * std::numbers::pi;
    CHECK(std::abs(soup.total_length() - two_pi) / two_pi < 1e-3);
}

TEST_CASE("segment endpoints interpolate the field back to the level") {
    const GridSpec spec = GridSpec::cube(2, -2.0, 2.0, 0.2);
    const double center[] = {0.03, -0.07};
    const ScalarField psi = coarea::make_circle_sdf(spec, center, 1.1, false);
    const double T = 0.2;
    const SegmentSoup soup = extract_isocontour(psi, T);
    REQUIRE(!soup.segments.empty());
    for (const auto& s : soup.segments) {
        for (const auto& [p0, p1] : {std::pair{s.a0, s.a1}, std::pair{s.b0, s.b1}}) {
            CHECK(std::abs(coarea::bilinear_sample(psi, p0, p1) - T) <= 1e-12);
        }
    }
}

TEST_CASE("integration over segments") {
    const GridSpec spec = GridSpec::cube(2, 0.0, 4.0, 0.5);
    const ScalarField psi = plane_field(spec);
    const SegmentSoup soup = extract_isocontour(psi, 1.25);

    const ScalarField ones = ScalarField::constant(spec, 1.0);
    CHECK(integrate_over_segments(soup, ones) == doctest::Approx(soup.total_length()).epsilon(1e-12));

    const ScalarField zeros = ScalarField::constant(spec, 0.0);
    CHECK(integrate_over_segments(soup, zeros) == 0.0);
}

TEST_CASE("total length is invariant under whole-step translation") {
    const double axes_r = 1.3;
    const GridSpec a = GridSpec::cube(2, -4.0, 4.0, 0.1);
    const std::size_t dims[] = {81, 81};
    const double sp[] = {0.1, 0.1};
    const double org[] = {-4.0 + 0.3, -4.0 - 0.5};  // shifted by whole grid steps
    const GridSpec b(dims, sp, org);

    const double ca[] = {0.0, 0.0};
    const double cb[] = {0.3, -0.5};  // field shifted the same way
    const double la = extract_isocontour(coarea::make_circle_sdf(a, ca, axes_r, false), 0.0).total_length();
    const double lb = extract_isocontour(coarea::make_circle_sdf(b, cb, axes_r, false), 0.0).total_length();
    CHECK(la == doctest::Approx(lb).epsilon(1e-12));
}

TEST_CASE("convex contours converge at second order") {
    const double truth = 2.0 * std::numbers::pi * 1.3;
    auto err_at = [&](double dx) {
        const GridSpec spec = GridSpec::cube(2, -4.0, 4.0, dx);
        const double c[] = {0.0, 0.0};
        const ScalarField psi = coarea::make_circle_sdf(spec, c, 1.3, false);
        return std::abs(extract_isocontour(psi, 0.0).total_length() - truth) / truth;
    };
    const double e1 = err_at(0.1);
    const double e2 = err_at(0.05);
    const double e3 = err_at(0.025);
    const double slope = 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e3));
    CHECK(slope >= 1.8);
}

TEST_CASE("saddle squares are resolved by the cell average") {
    // checkerboard corners: values +1/-1 diagonally, average 0
    const std::size_t dims[] = {2, 2};
    const double sp[] = {1.0, 1.0};
    const double org[] = {0.0, 0.0};
    const GridSpec spec(dims, sp, org);
    const ScalarField psi(spec, {-1.0, 1.0, 1.0, -1.0});
    const SegmentSoup soup = extract_isocontour(psi, 0.0);
    CHECK(soup.segments.size() == 2);
    // average is 0 <= T, center counts inside: the two outside corners are
    // wrapped and the cuts sit at edge midpoints, so each segment has length
    // sqrt(0.5)
    for (const auto& s : soup.segments) {
        CHECK(s.length() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
}

TEST_CASE("non-2D input is rejected") {
    const GridSpec spec3 = GridSpec::cube(3, 0.0, 1.0, 0.5);
    const ScalarField f3 = ScalarField::constant(spec3, 1.0);
    CHECK_THROWS_AS((void)extract_isocontour(f3, 0.5), std::invalid_argument);
}
