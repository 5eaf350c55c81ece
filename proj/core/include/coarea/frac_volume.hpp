#pragma once

#include "coarea/cell_model.hpp"

namespace coarea {

// Fractional volume v(tau, d) of the unit n-cube below a linear function
// with sorted, L1-normalized directional increases d, at normalized
// threshold tau, plus its derivative dv/dtau. v clamps to 0 for tau <= 0 and
// 1 for tau >= 1; dv/dtau is 0 outside [0,1].
//
// The inline kernels in coarea::fv assume their preconditions (0 <= d1 <=
// d2 <= ..., entries summing to 1) and are what the traversal loops call;
// the checked entry points below validate dimensionality through
// FractionalIncreases.
namespace fv {

inline constexpr double kZeroTol = FractionalIncreases::kZeroTol;

inline double v1(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t;
}

inline double dv1(double t) { return (t < 0.0 || t > 1.0) ? 0.0 : 1.0; }

// Three geometries: corner triangle, trapezoid, complement triangle. A zero
// d1 degenerates to the 1D fractional length.
inline double v2(double t, double d1, double d2) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (d1 < kZeroTol) return t;
    if (t < d1) return 0.5 * t * t / (d1 * d2);
    if (t <= 1.0 - d1) return (t - 0.5 * d1) / d2;
    const double u = 1.0 - t;
    return 1.0 - 0.5 * u * u / (d1 * d2);
}

inline double dv2(double t, double d1, double d2) {
    if (t < 0.0 || t > 1.0) return 0.0;
    if (d1 < kZeroTol) return 1.0 / d2;
    if (t < d1) return t / (d1 * d2);
    if (t <= 1.0 - d1) return 1.0 / d2;
    if (t < 1.0) return (1.0 - t) / (d1 * d2);
    return 0.0;
}

// Algebraically simplified case-by-case 3D expressions. These stay well
// conditioned as d1 (and d2) tend to zero, unlike the patterned
// inclusion-exclusion form. Case labels follow the interval ordering; 4a
// covers d3 <= t <= d1+d2 (possible when d3 < 1/2), 4b covers
// d1+d2 <= t <= d3 (when d3 >= 1/2).
inline double v3(double t, double d1, double d2, double d3) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    if (d1 < kZeroTol) return v2(t, d2, d3);
    const double s12 = d1 + d2;
    if (t < d1) {  // [1] corner simplex
        return t * t * t / (6.0 * d1 * d2 * d3);
    }
    if (t < d2) {  // [2]
        return (d1 * d1 + 3.0 * t * (t - d1)) / (6.0 * d2 * d3);
    }
    if (t < d3 && t < s12) {  // [3]
        const double u = 1.0 - t - d3;
        return (t - 0.5 * s12) / d3 + u * u * u / (6.0 * d1 * d2 * d3);
    }
    if (d3 <= s12) {
        if (t <= s12) {  // [4a]
            const double u = 1.0 - t - d3;
            const double w = t - d3;
            return (t - 0.5 * s12) / d3 + (u * u * u - w * w * w) / (6.0 * d1 * d2 * d3);
        }
    } else if (t <= d3) {  // [4b] slab
        return (t - 0.5 * s12) / d3;
    }
    if (t <= d1 + d3) {  // [5]
        const double w = t - d3;
        return (t - 0.5 * s12) / d3 - w * w * w / (6.0 * d1 * d2 * d3);
    }
    if (t <= d2 + d3) {  // [6] mirror of case 2
        const double u = 1.0 - t;
        return 1.0 - (d1 * d1 + 3.0 * u * (u - d1)) / (6.0 * d2 * d3);
    }
    // [7] complement corner simplex
    const double u = 1.0 - t;
    return 1.0 - u * u * u / (6.0 * d1 * d2 * d3);
}

inline double dv3(double t, double d1, double d2, double d3) {
    if (t < 0.0 || t > 1.0) return 0.0;
    if (d1 < kZeroTol) return dv2(t, d2, d3);
    const double s12 = d1 + d2;
    if (t < d1) {
        return t * t / (2.0 * d1 * d2 * d3);
    }
    if (t < d2) {
        return (t - 0.5 * d1) / (d2 * d3);
    }
    if (t < d3 && t < s12) {
        const double u = 1.0 - t - d3;
        return (1.0 - u * u / (2.0 * d1 * d2)) / d3;
    }
    if (d3 <= s12) {
        if (t <= s12) {
            const double u = 1.0 - t - d3;
            const double w = t - d3;
            return (1.0 - (u * u + w * w) / (2.0 * d1 * d2)) / d3;
        }
    } else if (t <= d3) {
        return 1.0 / d3;
    }
    if (t <= d1 + d3) {
        const double w = t - d3;
        return (1.0 - w * w / (2.0 * d1 * d2)) / d3;
    }
    if (t <= d2 + d3) {
        return ((1.0 - t) - 0.5 * d1) / (d2 * d3);
    }
    const double u = 1.0 - t;
    return u * u / (2.0 * d1 * d2 * d3);
}

}  // namespace fv

/// 1D fractional length, clamp(tau, 0, 1).
double v1d(double tau);

/// 2D fractional area; d must have exactly two entries.
double v2d(double tau, const FractionalIncreases& d);

/// 3D fractional volume via the well-conditioned simplified expressions;
/// d must have exactly three entries.
double v3d(double tau, const FractionalIncreases& d);

/// General-dimension fractional volume by inclusion-exclusion over spillover
/// simplices. Zero entries of d are removed first; throws when all entries
/// are zero (degenerate cells are the caller's business).
double vnd(double tau, const FractionalIncreases& d);

/// d/dtau of v2d; exactly 0 outside [0,1].
double dv2d(double tau, const FractionalIncreases& d);

/// d/dtau of v3d; exactly 0 outside [0,1].
double dv3d(double tau, const FractionalIncreases& d);

/// Dispatch on d.size(): v1d / v2d / v3d / vnd.
double fractional_volume(double tau, const FractionalIncreases& d);

/// Dispatch on d.size() for the derivative; sizes above 3 are not supported.
double fractional_volume_derivative(double tau, const FractionalIncreases& d);

}  // namespace coarea
