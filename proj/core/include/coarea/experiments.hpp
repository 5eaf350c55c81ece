#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarea/family.hpp"
#include "coarea/grid.hpp"

namespace coarea {

/// Small seedable generator with a portable, documented recurrence so trial
/// translations reproduce bit-exactly anywhere:
///   s ^= s >> 12;  s ^= s << 25;  s ^= s >> 27;  out = s * 2685821657736338717
/// A zero seed is replaced by 0x9E3779B97F4A7C15. Unit doubles take the top
/// 53 bits of out: (out >> 11) * 2^-53.
class XorShift64Star {
public:
    explicit XorShift64Star(std::uint64_t seed)
        : state_(seed == 0 ? 0x9E3779B97F4A7C15ull : seed) {}

    std::uint64_t next_u64() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 2685821657736338717ull;
    }

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Configuration of one convergence study.
struct TrialConfig {
    std::vector<double> resolutions;        // strictly decreasing dx sweep
    int n_trials = 50;
    std::uint64_t rng_seed = 1;
    std::array<double, 2> domain{-5.0, 5.0};
    bool randomize_centers = true;          // false pins every trial at the origin

    void validate() const;
};

/// One row of a convergence table. Orders are 0 on the first row and
/// log2(E_k/E_{k+1}) / log2(dx_k/dx_{k+1}) afterwards.
struct ConvergenceRow {
    double dx = 0.0;
    double avg_err = 0.0;
    double order_avg = 0.0;
    double sd_err = 0.0;
    double min_err = 0.0;
    double order_min = 0.0;
    double max_err = 0.0;
    double order_max = 0.0;
    double max_min_ratio = 0.0;
};

double convergence_order(double err_coarse, double err_fine, double dx_coarse, double dx_fine);

/// Least-squares slope of log2(err) against log2(dx) across a table.
double fitted_order(std::span<const ConvergenceRow> rows);

/// Arc length of the ellipse (x/1.5)^2 + (y/0.75)^2 = 1 measured as the
/// direct m(0) of its level-set field, per resolution, with the center
/// translated by the same seeded [0,1)^2 offsets at every resolution.
std::vector<ConvergenceRow> run_ellipse2d(const TrialConfig& config,
                                          TraversalMethod method = TraversalMethod::General);

enum class EllipsoidQuantity { Area, Volume };

/// Surface area (m(0), translated trials) or volume (vol(0), one centered
/// trial) of the ellipsoid with semi-axes (1.5, 0.75, 0.5).
std::vector<ConvergenceRow> run_ellipsoid3d(const TrialConfig& config, EllipsoidQuantity quantity);

/// Reference values behind the convergence tables.
inline constexpr double kEllipseArcLength = 7.266336165;
inline constexpr double kEllipsoidArea = 9.901821;
double ellipsoid_volume_exact();

struct FamilyBenchOptions {
    double t_min = -0.5;
    double t_max = 2.0;
    double dx = 0.025;
    std::array<double, 2> domain{-5.0, 5.0};
    int repetitions = 5;  // timed repetitions after one discarded warm-up
};

/// One sweep point of the family benchmark: wall times (best of the timed
/// repetitions, milliseconds) and mean relative arc-length error against
/// 2*pi*sqrt(1+T) per method.
struct FamilyBenchRow {
    int n_ts = 0;
    double t_causal_ms = 0.0;
    double t_general_ms = 0.0;
    double t_baseline_ms = 0.0;
    double err_causal = 0.0;
    double err_general = 0.0;
    double err_baseline = 0.0;
};

/// Times the causal and general traversals and the per-level marching
/// squares loop on the circle field x^2+y^2-1 over [t_min, t_max].
std::vector<FamilyBenchRow> run_family_benchmark(std::span<const int> nts_sweep,
                                                 const FamilyBenchOptions& options = {});

struct PhotogeoRow {
    double T = 0.0;
    double T_normalized = 0.0;  // T / |psi_min|, in [-1, 0]
    double f = 0.0;             // mean intensity along the T-contour (NaN when undefined)
};

/// Mean image intensity along the iso-contours of psi for T in
/// [min psi, 0] split into n_levels steps.
std::vector<PhotogeoRow> run_photogeo(const ScalarField& image, const ScalarField& psi,
                                      int n_levels,
                                      TraversalMethod method = TraversalMethod::General);

/// Loads the image from a PGM file and psi from either "circle:c0,c1,r"
/// (signed distance in grid coordinates) or a CAF1 field cache path.
std::vector<PhotogeoRow> run_photogeo_files(const std::string& image_path,
                                            const std::string& psi_source,
                                            int n_levels,
                                            TraversalMethod method = TraversalMethod::General);

// CSV emission: comma separated, '.' decimal point, header row, LF line
// endings, scientific notation with 6 significant digits, NaN as "nan".
void write_csv(const std::string& path, std::span<const ConvergenceRow> rows);
void write_csv(const std::string& path, std::span<const FamilyBenchRow> rows);
void write_csv(const std::string& path, std::span<const PhotogeoRow> rows);

std::string format_csv(std::span<const ConvergenceRow> rows);
std::string format_csv(std::span<const FamilyBenchRow> rows);
std::string format_csv(std::span<const PhotogeoRow> rows);

}  // namespace coarea
