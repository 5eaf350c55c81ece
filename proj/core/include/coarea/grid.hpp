#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace coarea {

/// Uniform Cartesian grid layout: per-axis point counts, spacings and the
/// world coordinate of index 0. Storage is row-major with axis 0 slowest.
/// The cell attached to a grid point is the axis-aligned box of edge lengths
/// `spacing` centered on that point.
class GridSpec {
public:
    static constexpr int kMaxDim = 3;

    GridSpec(std::span<const std::size_t> dims,
             std::span<const double> spacing,
             std::span<const double> origin);

    /// n-cube domain [lo, hi]^ndim sampled with exact step dx (throws if
    /// (hi-lo)/dx is not an integer to 1e-9 relative).
    static GridSpec cube(int ndim, double lo, double hi, double dx);

    int ndim() const { return ndim_; }
    std::size_t dim(int axis) const { return dims_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double origin(int axis) const { return origin_[axis]; }

    std::span<const std::size_t> dims() const { return {dims_.data(), static_cast<std::size_t>(ndim_)}; }
    std::span<const double> spacings() const { return {spacing_.data(), static_cast<std::size_t>(ndim_)}; }

    std::size_t point_count() const;
    /// Product of the spacings: the volume of one grid cell.
    double cell_volume() const;
    /// Volume covered by all cells, (dim(k)*spacing(k)) per axis.
    double domain_volume() const;

    double coord(int axis, std::size_t index) const { return origin_[axis] + static_cast<double>(index) * spacing_[axis]; }

    /// Row-major stride of an axis (axis 0 slowest).
    std::size_t stride(int axis) const;

    bool operator==(const GridSpec& other) const;
    bool operator!=(const GridSpec& other) const { return !(*this == other); }

private:
    int ndim_ = 0;
    std::array<std::size_t, kMaxDim> dims_{};
    std::array<double, kMaxDim> spacing_{};
    std::array<double, kMaxDim> origin_{};
};

/// Grid-sampled real function. `values` is row-major (axis 0 slowest) and
/// must contain one finite value per grid point.
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;

    ScalarField(GridSpec spec, std::vector<double> values);

    static ScalarField constant(const GridSpec& spec, double value);

    double operator[](std::size_t linear) const { return values[linear]; }
    double at(std::size_t i, std::size_t j) const { return values[i * spec.dim(1) + j]; }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return values[(i * spec.dim(1) + j) * spec.dim(2) + k];
    }

    double min_value() const;
    double max_value() const;
};

/// Per-point gradient estimate of a scalar field; components interleaved,
/// ndim per point, same row-major point order as ScalarField.
struct GradientField {
    GridSpec spec;
    std::vector<double> components;

    GradientField(GridSpec spec, std::vector<double> components);

    std::span<const double> at(std::size_t linear) const {
        const auto n = static_cast<std::size_t>(spec.ndim());
        return {components.data() + linear * n, n};
    }
};

/// ((x-cx)/a)^2 + ((y-cy)/b)^2 - 1 sampled over a 2D grid.
ScalarField make_ellipse_field(const GridSpec& spec,
                               std::span<const double> center,
                               std::span<const double> semi_axes);

/// Quadratic level-set field of an ellipsoid over a 3D grid.
ScalarField make_ellipsoid_field(const GridSpec& spec,
                                 std::span<const double> center,
                                 std::span<const double> semi_axes);

/// Circle level-set field: squared form x^2+y^2-r^2, or the signed distance
/// form ||x-c|| - r (the latter is a distance function and admits the causal
/// traversal).
ScalarField make_circle_sdf(const GridSpec& spec,
                            std::span<const double> center,
                            double radius,
                            bool squared = false);

/// Sphere signed distance ||x-c|| - r over a 3D grid.
ScalarField make_sphere_sdf(const GridSpec& spec,
                            std::span<const double> center,
                            double radius);

/// Second-order central differences at interior points, first-order
/// one-sided differences on the boundary faces. Exact for affine fields at
/// interior points.
GradientField estimate_gradient(const ScalarField& psi);

}  // namespace coarea
