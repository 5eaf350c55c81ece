#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coarea/cell_model.hpp"
#include "coarea/grid.hpp"

namespace coarea {

/// Discretized level-value axis: n_steps+1 inclusive samples
/// T_k = t_min + k*dt, k = 0..n_steps.
struct LevelRange {
    double t_min;
    double t_max;
    int n_steps;

    LevelRange(double t_min, double t_max, int n_steps);

    double dt() const { return (t_max - t_min) / n_steps; }
    int sample_count() const { return n_steps + 1; }
    double sample(int k) const { return t_min + k * dt(); }
};

/// The three families over one LevelRange: the antiderivative M(T) of the
/// sublevel integral of h*|grad psi|, the level-set integral m(T) = dM/dT
/// (computed directly from the analytic dv/dtau), and the sublevel volume.
struct LevelFamily {
    LevelRange range;
    std::vector<double> M;
    std::vector<double> m;
    std::vector<double> vol;
};

/// Instrumentation for the optimized traversals.
struct TraversalStats {
    std::size_t cell_visits = 0;                  // total cell evaluations across all T steps
    std::vector<std::size_t> active_at_step;      // active-list size at the start of each step
    std::vector<std::size_t> visited_at_step;     // causal only: visited count after each step
};

/// Contribution of one cell to M(T): h_i * |grad| * (prod spacing) * v(tau).
/// Full cells contribute their constant cap, empty and degenerate cells 0.
double cell_M_contribution(const CellModel& model, double h_i,
                           std::span<const double> spacing, double T);

/// Intersected hypersurface area of the T-level set of the linear model
/// within the cell: (prod spacing) * |grad| / total_increase * dv(tau).
/// Zero for full, empty and degenerate cells.
double cell_area_element(const CellModel& model,
                         std::span<const double> spacing, double T);

/// Reference implementation: re-sweeps every cell for every T sample,
/// rebuilding the per-cell model each time. Serves as the equivalence oracle
/// for the optimized traversals and needs no per-cell storage.
LevelFamily compute_family_naive(const ScalarField& psi, const ScalarField& h,
                                 const GradientField& grad, const LevelRange& range);

/// Incremental traversal over a shrinking not-full list: cells whose model
/// maximum has fallen below T are folded into running full-set accumulators
/// and never revisited.
LevelFamily compute_family_general(const ScalarField& psi, const ScalarField& h,
                                   const GradientField& grad, const LevelRange& range,
                                   TraversalStats* stats = nullptr);

/// Front-advancing traversal for distance-like fields. Requires (and does
/// not verify) that every grid point connects to the T_min sublevel region
/// by a face-neighbor path along which psi is monotone; a violated
/// precondition silently underestimates. The active list is scanned by
/// position while unvisited neighbors below the current level are appended
/// at the end, so appended cells are still processed within the same step.
LevelFamily compute_family_causal(const ScalarField& psi, const ScalarField& h,
                                  const GradientField& grad, const LevelRange& range,
                                  TraversalStats* stats = nullptr);

enum class TraversalMethod { Naive, General, Causal };

LevelFamily compute_family(TraversalMethod method,
                           const ScalarField& psi, const ScalarField& h,
                           const GradientField& grad, const LevelRange& range);

/// Finite-difference fallback for m(T): forward differences, backward at the
/// last sample. Needs at least two samples.
std::vector<double> differentiate_family(std::span<const double> M_values, double dt);

/// Mean of I over each T-level contour: m_I(T)/m_1(T) with h = I and h = 1
/// respectively, one family pass each. Samples whose contour length falls
/// below 1e-12 * cell volume are reported as NaN.
std::vector<double> mean_intensity_profile(const ScalarField& I, const ScalarField& psi,
                                           const GradientField& grad, const LevelRange& range,
                                           TraversalMethod method = TraversalMethod::General);

}  // namespace coarea
