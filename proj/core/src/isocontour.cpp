#include "coarea/isocontour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace coarea {

double Segment::length() const {
    const double u = b0 - a0;
    const double v = b1 - a1;
    return std::sqrt(u * u + v * v);
}

double SegmentSoup::total_length() const {
    double len = 0.0;
    for (const Segment& s : segments) len += s.length();
    return len;
}

namespace {

struct Point {
    double c0, c1;
};

// Corner order within a square anchored at grid point (i,j):
//   0:(i,j)  1:(i+1,j)  2:(i+1,j+1)  3:(i,j+1)
// Edge e connects corner e and corner (e+1)%4.
constexpr int kEdgeCorner[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};

}  // namespace

SegmentSoup extract_isocontour(const ScalarField& psi, double T) {
    if (psi.spec.ndim() != 2) {
        throw std::invalid_argument("extract_isocontour: field must be 2D");
    }
    const GridSpec& spec = psi.spec;
    const std::size_t d0 = spec.dim(0), d1 = spec.dim(1);

    SegmentSoup soup;
    soup.level = T;

    std::array<Point, 4> corner_pos;
    std::array<double, 4> corner_val;

    for (std::size_t i = 0; i + 1 < d0; ++i) {
        for (std::size_t j = 0; j + 1 < d1; ++j) {
            const std::size_t base = i * d1 + j;
            corner_val[0] = psi.values[base];
            corner_val[1] = psi.values[base + d1];
            corner_val[2] = psi.values[base + d1 + 1];
            corner_val[3] = psi.values[base + 1];

            // inside means psi <= T; a corner exactly at T joins the sublevel side
            int mask = 0;
            for (int c = 0; c < 4; ++c) {
                if (corner_val[c] <= T) mask |= 1 << c;
            }
            if (mask == 0 || mask == 0xf) continue;

            corner_pos[0] = {spec.coord(0, i), spec.coord(1, j)};
            corner_pos[1] = {spec.coord(0, i + 1), spec.coord(1, j)};
            corner_pos[2] = {spec.coord(0, i + 1), spec.coord(1, j + 1)};
            corner_pos[3] = {spec.coord(0, i), spec.coord(1, j + 1)};

            // Edge intersections where the inside flag flips.
            std::array<Point, 4> cut;
            std::array<int, 4> cut_edge;
            int n_cut = 0;
            for (int e = 0; e < 4; ++e) {
                const int ca = kEdgeCorner[e][0], cb = kEdgeCorner[e][1];
                const bool ia = (mask >> ca) & 1, ib = (mask >> cb) & 1;
                if (ia == ib) continue;
                const double va = corner_val[ca], vb = corner_val[cb];
                const double t = (T - va) / (vb - va);
                cut[n_cut] = {corner_pos[ca].c0 + t * (corner_pos[cb].c0 - corner_pos[ca].c0),
                              corner_pos[ca].c1 + t * (corner_pos[cb].c1 - corner_pos[ca].c1)};
                cut_edge[n_cut] = e;
                ++n_cut;
            }

            auto emit = [&](const Point& a, const Point& b) {
                if (a.c0 == b.c0 && a.c1 == b.c1) return;  // filter zero-length
                soup.segments.push_back(Segment{a.c0, a.c1, b.c0, b.c1});
            };

            if (n_cut == 2) {
                emit(cut[0], cut[1]);
            } else if (n_cut == 4) {
                // Saddle: all four edges cross. The cell average decides
                // whether the center belongs to the sublevel side; segments
                // then wrap the isolated corner pair.
                const double avg = 0.25 * (corner_val[0] + corner_val[1] + corner_val[2] + corner_val[3]);
                const bool center_inside = avg <= T;
                const bool corner0_inside = (mask >> 0) & 1;  // mask is 0b0101 or 0b1010
                // Cuts arrive in edge order 0,1,2,3. Wrapping corner 1 pairs
                // edges (0,1); wrapping corner 3 pairs (2,3); wrapping corner
                // 0 pairs (3,0); wrapping corner 2 pairs (1,2).
                const bool isolate_outside = center_inside;
                const bool outside_is_13 = corner0_inside;  // inside={0,2} -> outside corners 1,3
                if (isolate_outside == outside_is_13) {
                    emit(cut[0], cut[1]);  // around corner 1
                    emit(cut[2], cut[3]);  // around corner 3
                } else {
                    emit(cut[3], cut[0]);  // around corner 0
                    emit(cut[1], cut[2]);  // around corner 2
                }
                (void)cut_edge;
            }
        }
    }
    return soup;
}

double bilinear_sample(const ScalarField& f, double x0, double x1) {
    if (f.spec.ndim() != 2) {
        throw std::invalid_argument("bilinear_sample: field must be 2D");
    }
    const GridSpec& spec = f.spec;
    const double u0 = (x0 - spec.origin(0)) / spec.spacing(0);
    const double u1 = (x1 - spec.origin(1)) / spec.spacing(1);
    const double max0 = static_cast<double>(spec.dim(0) - 1);
    const double max1 = static_cast<double>(spec.dim(1) - 1);
    constexpr double kSlack = 1e-9;
    if (u0 < -kSlack || u0 > max0 + kSlack || u1 < -kSlack || u1 > max1 + kSlack) {
        throw std::domain_error("bilinear_sample: point outside grid");
    }
    const double c0 = std::clamp(u0, 0.0, max0);
    const double c1 = std::clamp(u1, 0.0, max1);
    std::size_t i = std::min(static_cast<std::size_t>(c0), spec.dim(0) - 2);
    std::size_t j = std::min(static_cast<std::size_t>(c1), spec.dim(1) - 2);
    const double fx = c0 - static_cast<double>(i);
    const double fy = c1 - static_cast<double>(j);
    const std::size_t base = i * spec.dim(1) + j;
    const double v00 = f.values[base];
    const double v01 = f.values[base + 1];
    const double v10 = f.values[base + spec.dim(1)];
    const double v11 = f.values[base + spec.dim(1) + 1];
    return (1.0 - fx) * ((1.0 - fy) * v00 + fy * v01) + fx * ((1.0 - fy) * v10 + fy * v11);
}

double integrate_over_segments(const SegmentSoup& soup, const ScalarField& h) {
    double acc = 0.0;
    for (const Segment& s : soup.segments) {
        const double mid0 = 0.5 * (s.a0 + s.b0);
        const double mid1 = 0.5 * (s.a1 + s.b1);
        acc += s.length() * bilinear_sample(h, mid0, mid1);
    }
    return acc;
}

}  // namespace coarea
