#include "coarea/frac_volume.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coarea {

namespace {

void require_size(const FractionalIncreases& d, std::size_t n, const char* fn) {
    if (d.size() != n) {
        throw std::invalid_argument(std::string(fn) + ": wrong dimension for d");
    }
}

double int_pow(double base, std::size_t n) {
    double r = 1.0;
    for (std::size_t k = 0; k < n; ++k) r *= base;
    return r;
}

// Signed spillover corrections: for every m-tuple of distinct indices whose
// d-sum stays below tau, add (-1)^m (tau - sum)^n. d is ascending, so once a
// candidate entry pushes the running sum to tau or beyond, every extension
// from there would too.
void add_spillovers(std::span<const double> d, double tau, std::size_t n,
                    std::size_t first, double sum, std::size_t depth, double sign,
                    double& acc) {
    if (depth == n - 1) return;  // tuples run up to (n-1) indices
    for (std::size_t j = first; j < d.size(); ++j) {
        const double s = sum + d[j];
        if (s >= tau) break;
        acc += sign * int_pow(tau - s, n);
        add_spillovers(d, tau, n, j + 1, s, depth + 1, -sign, acc);
    }
}

}  // namespace

double v1d(double tau) { return fv::v1(tau); }

double v2d(double tau, const FractionalIncreases& d) {
    require_size(d, 2, "v2d");
    return fv::v2(tau, d[0], d[1]);
}

double v3d(double tau, const FractionalIncreases& d) {
    require_size(d, 3, "v3d");
    return fv::v3(tau, d[0], d[1], d[2]);
}

double vnd(double tau, const FractionalIncreases& d) {
    const auto nz = d.zero_count();
    const auto vals = d.values().subspan(nz);
    const std::size_t n = vals.size();
    if (n == 0) {
        throw std::invalid_argument("vnd: all-zero d (degenerate cell)");
    }
    if (tau <= 0.0) return 0.0;
    if (tau >= 1.0) return 1.0;

    double denom = 1.0;
    for (std::size_t k = 0; k < n; ++k) denom *= vals[k] * static_cast<double>(k + 1);

    double acc = int_pow(tau, n);
    add_spillovers(vals, tau, n, 0, 0.0, 0, -1.0, acc);
    return std::clamp(acc / denom, 0.0, 1.0);
}

double dv2d(double tau, const FractionalIncreases& d) {
    require_size(d, 2, "dv2d");
    return fv::dv2(tau, d[0], d[1]);
}

double dv3d(double tau, const FractionalIncreases& d) {
    require_size(d, 3, "dv3d");
    return fv::dv3(tau, d[0], d[1], d[2]);
}

double fractional_volume(double tau, const FractionalIncreases& d) {
    switch (d.size()) {
        case 1: return fv::v1(tau);
        case 2: return fv::v2(tau, d[0], d[1]);
        case 3: return fv::v3(tau, d[0], d[1], d[2]);
        default: return vnd(tau, d);
    }
}

double fractional_volume_derivative(double tau, const FractionalIncreases& d) {
    switch (d.size()) {
        case 1: return fv::dv1(tau);
        case 2: return fv::dv2(tau, d[0], d[1]);
        case 3: return fv::dv3(tau, d[0], d[1], d[2]);
        default:
            throw std::invalid_argument("fractional_volume_derivative: only dimensions 1-3");
    }
}

}  // namespace coarea
