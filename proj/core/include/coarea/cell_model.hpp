#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace coarea {

/// L1-normalized per-axis increases of the linear cell model, sorted
/// ascending. Entries below kZeroTol count as zero; a degenerate (constant)
/// cell yields the all-zero vector.
class FractionalIncreases {
public:
    static constexpr std::size_t kMaxDim = 8;
    static constexpr double kZeroTol = 1e-12;

    /// Sorts |increases| ascending and divides by their sum. An all-zero
    /// input produces the degenerate zero vector.
    static FractionalIncreases from_increases(std::span<const double> increases);

    /// Validating constructor for already sorted, normalized entries.
    /// Throws std::invalid_argument when entries are negative, descending,
    /// or do not sum to 1 (tolerance 1e-12; the all-zero vector is allowed).
    explicit FractionalIncreases(std::span<const double> sorted_normalized);

    std::span<const double> values() const { return {d_.data(), n_}; }
    double operator[](std::size_t k) const { return d_[k]; }
    std::size_t size() const { return n_; }
    /// Number of leading entries below kZeroTol.
    std::size_t zero_count() const { return n_zero_; }

private:
    FractionalIncreases() = default;

    std::array<double, kMaxDim> d_{};
    std::size_t n_ = 0;
    std::size_t n_zero_ = 0;
};

/// Linear approximation of the level-set function over one grid cell:
/// extremal values, gradient magnitude and the normalized increase vector.
struct CellModel {
    double min_psi = 0.0;
    double max_psi = 0.0;
    double grad_norm = 0.0;
    double total_increase = 0.0;  // max_psi - min_psi
    FractionalIncreases d = FractionalIncreases::from_increases({});
};

/// Builds the cell model from the sample at the cell center, the gradient
/// estimate there and the grid spacing. A zero gradient yields the valid
/// degenerate model (min = max = psi_center).
CellModel build_cell_model(double psi_center,
                           std::span<const double> grad,
                           std::span<const double> spacing);

/// Opposite cell vertices attaining the extrema of the linear model.
/// Zero gradient components take the +1 sign, which pins down a unique pair.
std::pair<std::vector<double>, std::vector<double>>
extremal_vertices(std::span<const double> center,
                  std::span<const double> grad,
                  std::span<const double> spacing);

enum class CellClass : std::uint8_t { Full, Partial, Empty };

/// Full iff max_psi <= T, Empty iff min_psi >= T, Partial otherwise. Ties go
/// to Full at the max and Empty at the min; a degenerate cell is Full when
/// its constant value is <= T.
CellClass classify_cell(const CellModel& model, double T);

}  // namespace coarea
