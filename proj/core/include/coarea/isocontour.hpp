#pragma once

#include <cstddef>
#include <vector>

#include "coarea/grid.hpp"

namespace coarea {

/// Line segment in world coordinates (components along grid axes 0 and 1).
struct Segment {
    double a0, a1;
    double b0, b1;

    double length() const;
};

/// Unordered segments of one extracted T-level isocontour.
struct SegmentSoup {
    double level = 0.0;
    std::vector<Segment> segments;

    double total_length() const;
};

/// Marching squares over the grid-point lattice: each square of 4 adjacent
/// grid points is classified corner-wise by psi <= T (a corner exactly at T
/// counts as inside) and 0-2 segments are emitted with edge intersections by
/// linear interpolation. Saddle squares are disambiguated by the cell
/// average of the 4 corners. Zero-length segments are dropped.
SegmentSoup extract_isocontour(const ScalarField& psi, double T);

/// Midpoint quadrature along the soup: sum of length * h(midpoint), with h
/// evaluated by bilinear interpolation. Throws if a midpoint falls outside
/// the grid of h.
double integrate_over_segments(const SegmentSoup& soup, const ScalarField& h);

/// Bilinear interpolation of a 2D field at a world point; throws
/// std::domain_error outside the sampled rectangle (beyond round-off slack).
double bilinear_sample(const ScalarField& f, double x0, double x1);

}  // namespace coarea
