#include "coarea/cell_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coarea {

FractionalIncreases FractionalIncreases::from_increases(std::span<const double> increases) {
    if (increases.size() > kMaxDim) {
        throw std::invalid_argument("FractionalIncreases: too many entries");
    }
    FractionalIncreases f;
    f.n_ = increases.size();
    double total = 0.0;
    for (std::size_t k = 0; k < f.n_; ++k) {
        const double a = std::abs(increases[k]);
        if (!std::isfinite(a)) throw std::invalid_argument("FractionalIncreases: non-finite entry");
        f.d_[k] = a;
        total += a;
    }
    if (total > 0.0) {
        for (std::size_t k = 0; k < f.n_; ++k) f.d_[k] /= total;
    }
    std::sort(f.d_.begin(), f.d_.begin() + f.n_);
    f.n_zero_ = 0;
    while (f.n_zero_ < f.n_ && f.d_[f.n_zero_] < kZeroTol) ++f.n_zero_;
    return f;
}

FractionalIncreases::FractionalIncreases(std::span<const double> sorted_normalized) {
    if (sorted_normalized.size() > kMaxDim) {
        throw std::invalid_argument("FractionalIncreases: too many entries");
    }
    n_ = sorted_normalized.size();
    double total = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
        const double v = sorted_normalized[k];
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("FractionalIncreases: entries must be nonnegative");
        }
        if (k > 0 && v < d_[k - 1]) {
            throw std::invalid_argument("FractionalIncreases: entries must be ascending");
        }
        d_[k] = v;
        total += v;
    }
    if (n_ > 0 && total != 0.0 && std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("FractionalIncreases: entries must sum to 1");
    }
    n_zero_ = 0;
    while (n_zero_ < n_ && d_[n_zero_] < kZeroTol) ++n_zero_;
}

CellModel build_cell_model(double psi_center,
                           std::span<const double> grad,
                           std::span<const double> spacing) {
    const std::size_t n = grad.size();
    if (n == 0 || n != spacing.size()) {
        throw std::invalid_argument("build_cell_model: grad/spacing length mismatch");
    }
    std::array<double, FractionalIncreases::kMaxDim> inc{};
    if (n > inc.size()) throw std::invalid_argument("build_cell_model: too many axes");

    double total = 0.0;
    double norm2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(spacing[k] > 0.0)) throw std::invalid_argument("build_cell_model: spacing must be positive");
        if (!std::isfinite(grad[k])) throw std::invalid_argument("build_cell_model: gradient must be finite");
        inc[k] = std::abs(spacing[k] * grad[k]);
        total += inc[k];
        norm2 += grad[k] * grad[k];
    }

    CellModel m;
    m.grad_norm = std::sqrt(norm2);
    m.total_increase = total;
    m.min_psi = psi_center - 0.5 * total;
    m.max_psi = psi_center + 0.5 * total;
    m.d = FractionalIncreases::from_increases({inc.data(), n});
    return m;
}

std::pair<std::vector<double>, std::vector<double>>
extremal_vertices(std::span<const double> center,
                  std::span<const double> grad,
                  std::span<const double> spacing) {
    const std::size_t n = center.size();
    if (n == 0 || grad.size() != n || spacing.size() != n) {
        throw std::invalid_argument("extremal_vertices: length mismatch");
    }
    std::vector<double> vmin(n), vmax(n);
    for (std::size_t k = 0; k < n; ++k) {
        // sign convention: negative components map to -1, everything else
        // (including exact zero) to +1
        const double s = grad[k] < 0.0 ? -1.0 : 1.0;
        const double half = 0.5 * spacing[k] * s;
        vmin[k] = center[k] - half;
        vmax[k] = center[k] + half;
    }
    return {std::move(vmin), std::move(vmax)};
}

CellClass classify_cell(const CellModel& model, double T) {
    if (model.max_psi <= T) return CellClass::Full;
    if (model.min_psi >= T) return CellClass::Empty;
    return CellClass::Partial;
}

}  // namespace coarea
