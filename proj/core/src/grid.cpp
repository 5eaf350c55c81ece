#include "coarea/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace coarea {

GridSpec::GridSpec(std::span<const std::size_t> dims,
                   std::span<const double> spacing,
                   std::span<const double> origin) {
    const std::size_t n = dims.size();
    if (n < 2 || n > static_cast<std::size_t>(kMaxDim)) {
        throw std::invalid_argument("GridSpec: ndim must be 2 or 3, got " + std::to_string(n));
    }
    if (spacing.size() != n || origin.size() != n) {
        throw std::invalid_argument("GridSpec: dims/spacing/origin length mismatch");
    }
    ndim_ = static_cast<int>(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (dims[k] < 2) {
            throw std::invalid_argument("GridSpec: every axis needs >= 2 points");
        }
        if (!(spacing[k] > 0.0) || !std::isfinite(spacing[k])) {
            throw std::invalid_argument("GridSpec: spacing must be positive and finite");
        }
        if (!std::isfinite(origin[k])) {
            throw std::invalid_argument("GridSpec: origin must be finite");
        }
        dims_[k] = dims[k];
        spacing_[k] = spacing[k];
        origin_[k] = origin[k];
    }
}

GridSpec GridSpec::cube(int ndim, double lo, double hi, double dx) {
    if (!(hi > lo)) {
        throw std::invalid_argument("GridSpec::cube: hi must exceed lo");
    }
    if (!(dx > 0.0)) {
        throw std::invalid_argument("GridSpec::cube: dx must be positive");
    }
    const double steps = (hi - lo) / dx;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps) || rounded < 1.0) {
        throw std::invalid_argument("GridSpec::cube: (hi-lo)/dx must be a positive integer");
    }
    const auto npts = static_cast<std::size_t>(rounded) + 1;
    std::vector<std::size_t> dims(static_cast<std::size_t>(ndim), npts);
    std::vector<double> spacing(static_cast<std::size_t>(ndim), dx);
    std::vector<double> origin(static_cast<std::size_t>(ndim), lo);
    return GridSpec(dims, spacing, origin);
}

std::size_t GridSpec::point_count() const {
    std::size_t n = 1;
    for (int k = 0; k < ndim_; ++k) n *= dims_[k];
    return n;
}

double GridSpec::cell_volume() const {
    double v = 1.0;
    for (int k = 0; k < ndim_; ++k) v *= spacing_[k];
    return v;
}

double GridSpec::domain_volume() const {
    double v = 1.0;
    for (int k = 0; k < ndim_; ++k) v *= static_cast<double>(dims_[k]) * spacing_[k];
    return v;
}

std::size_t GridSpec::stride(int axis) const {
    std::size_t s = 1;
    for (int k = axis + 1; k < ndim_; ++k) s *= dims_[k];
    return s;
}

bool GridSpec::operator==(const GridSpec& other) const {
    if (ndim_ != other.ndim_) return false;
    for (int k = 0; k < ndim_; ++k) {
        if (dims_[k] != other.dims_[k] || spacing_[k] != other.spacing_[k] ||
            origin_[k] != other.origin_[k]) {
            return false;
        }
    }
    return true;
}

ScalarField::ScalarField(GridSpec spec_, std::vector<double> values_)
    : spec(spec_), values(std::move(values_)) {
    if (values.size() != spec.point_count()) {
        throw std::invalid_argument("ScalarField: value count does not match grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("ScalarField: values must be finite");
        }
    }
}

ScalarField ScalarField::constant(const GridSpec& spec, double value) {
    return ScalarField(spec, std::vector<double>(spec.point_count(), value));
}

double ScalarField::min_value() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max_value() const { return *std::max_element(values.begin(), values.end()); }

GradientField::GradientField(GridSpec spec_, std::vector<double> components_)
    : spec(spec_), components(std::move(components_)) {
    const std::size_t expected = spec.point_count() * static_cast<std::size_t>(spec.ndim());
    if (components.size() != expected) {
        throw std::invalid_argument("GradientField: component count does not match grid");
    }
    for (double v : components) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("GradientField: components must be finite");
        }
    }
}

namespace {

template <typename F>
ScalarField sample_field(const GridSpec& spec, F&& fn) {
    std::vector<double> values(spec.point_count());
    std::array<double, GridSpec::kMaxDim> x{};
    if (spec.ndim() == 2) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < spec.dim(0); ++i) {
            x[0] = spec.coord(0, i);
            for (std::size_t j = 0; j < spec.dim(1); ++j) {
                x[1] = spec.coord(1, j);
                values[idx++] = fn(std::span<const double>(x.data(), 2));
            }
        }
    } else {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < spec.dim(0); ++i) {
            x[0] = spec.coord(0, i);
            for (std::size_t j = 0; j < spec.dim(1); ++j) {
                x[1] = spec.coord(1, j);
                for (std::size_t k = 0; k < spec.dim(2); ++k) {
                    x[2] = spec.coord(2, k);
                    values[idx++] = fn(std::span<const double>(x.data(), 3));
                }
            }
        }
    }
    return ScalarField(spec, std::move(values));
}

void require_positive_axes(std::span<const double> semi_axes) {
    for (double a : semi_axes) {
        if (!(a > 0.0)) throw std::invalid_argument("semi-axes must be positive");
    }
}

}  // namespace

ScalarField make_ellipse_field(const GridSpec& spec,
                               std::span<const double> center,
                               std::span<const double> semi_axes) {
    if (spec.ndim() != 2 || center.size() != 2 || semi_axes.size() != 2) {
        throw std::invalid_argument("make_ellipse_field: needs a 2D grid, center and semi-axes");
    }
    require_positive_axes(semi_axes);
    return sample_field(spec, [&](std::span<const double> x) {
        const double u = (x[0] - center[0]) / semi_axes[0];
        const double v = (x[1] - center[1]) / semi_axes[1];
        return u * u + v * v - 1.0;
    });
}

ScalarField make_ellipsoid_field(const GridSpec& spec,
                                 std::span<const double> center,
                                 std::span<const double> semi_axes) {
    if (spec.ndim() != 3 || center.size() != 3 || semi_axes.size() != 3) {
        throw std::invalid_argument("make_ellipsoid_field: needs a 3D grid, center and semi-axes");
    }
    require_positive_axes(semi_axes);
    return sample_field(spec, [&](std::span<const double> x) {
        double s = -1.0;
        for (int k = 0; k < 3; ++k) {
            const double u = (x[k] - center[k]) / semi_axes[k];
            s += u * u;
        }
        return s;
    });
}

ScalarField make_circle_sdf(const GridSpec& spec,
                            std::span<const double> center,
                            double radius,
                            bool squared) {
    if (spec.ndim() != 2 || center.size() != 2) {
        throw std::invalid_argument("make_circle_sdf: needs a 2D grid and center");
    }
    if (!(radius > 0.0)) throw std::invalid_argument("make_circle_sdf: radius must be positive");
    return sample_field(spec, [&](std::span<const double> x) {
        const double dx = x[0] - center[0];
        const double dy = x[1] - center[1];
        const double r2 = dx * dx + dy * dy;
        return squared ? r2 - radius * radius : std::sqrt(r2) - radius;
    });
}

ScalarField make_sphere_sdf(const GridSpec& spec,
                            std::span<const double> center,
                            double radius) {
    if (spec.ndim() != 3 || center.size() != 3) {
        throw std::invalid_argument("make_sphere_sdf: needs a 3D grid and center");
    }
    if (!(radius > 0.0)) throw std::invalid_argument("make_sphere_sdf: radius must be positive");
    return sample_field(spec, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double d = x[k] - center[k];
            r2 += d * d;
        }
        return std::sqrt(r2) - radius;
    });
}

namespace {

// One axis of the difference stencil: central in the interior, one-sided on
// the two boundary faces.
inline double diff_along(const std::vector<double>& v, std::size_t idx, std::size_t pos,
                         std::size_t npts, std::size_t stride, double h) {
    if (pos == 0) return (v[idx + stride] - v[idx]) / h;
    if (pos == npts - 1) return (v[idx] - v[idx - stride]) / h;
    return (v[idx + stride] - v[idx - stride]) / (2.0 * h);
}

}  // namespace

GradientField estimate_gradient(const ScalarField& psi) {
    const GridSpec& spec = psi.spec;
    const auto n = static_cast<std::size_t>(spec.ndim());
    std::vector<double> comps(spec.point_count() * n);

    if (spec.ndim() == 2) {
        const std::size_t d0 = spec.dim(0), d1 = spec.dim(1);
        const double h0 = spec.spacing(0), h1 = spec.spacing(1);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d0; ++i) {
            for (std::size_t j = 0; j < d1; ++j, ++idx) {
                comps[2 * idx + 0] = diff_along(psi.values, idx, i, d0, d1, h0);
                comps[2 * idx + 1] = diff_along(psi.values, idx, j, d1, 1, h1);
            }
        }
    } else {
        const std::size_t d0 = spec.dim(0), d1 = spec.dim(1), d2 = spec.dim(2);
        const double h0 = spec.spacing(0), h1 = spec.spacing(1), h2 = spec.spacing(2);
        const std::size_t s0 = d1 * d2;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < d0; ++i) {
            for (std::size_t j = 0; j < d1; ++j) {
                for (std::size_t k = 0; k < d2; ++k, ++idx) {
                    comps[3 * idx + 0] = diff_along(psi.values, idx, i, d0, s0, h0);
                    comps[3 * idx + 1] = diff_along(psi.values, idx, j, d1, d2, h1);
                    comps[3 * idx + 2] = diff_along(psi.values, idx, k, d2, 1, h2);
                }
            }
        }
    }
    return GradientField(spec, std::move(comps));
}

}  // namespace coarea
