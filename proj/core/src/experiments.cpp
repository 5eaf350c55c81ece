#include "coarea/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "coarea/field_io.hpp"
#include "coarea/isocontour.hpp"

namespace coarea {

void TrialConfig::validate() const {
    if (resolutions.empty()) throw std::invalid_argument("TrialConfig: resolutions must not be empty");
    for (std::size_t k = 0; k < resolutions.size(); ++k) {
        if (!(resolutions[k] > 0.0)) throw std::invalid_argument("TrialConfig: resolutions must be positive");
        if (k > 0 && !(resolutions[k] < resolutions[k - 1])) {
            throw std::invalid_argument("TrialConfig: resolutions must be strictly decreasing");
        }
    }
    if (n_trials < 1) throw std::invalid_argument("TrialConfig: n_trials must be >= 1");
    if (!(domain[0] < domain[1])) throw std::invalid_argument("TrialConfig: empty domain");
}

double convergence_order(double err_coarse, double err_fine, double dx_coarse, double dx_fine) {
    if (!(err_coarse > 0.0) || !(err_fine > 0.0) || !(dx_coarse > 0.0) || !(dx_fine > 0.0) ||
        dx_coarse == dx_fine) {
        return 0.0;
    }
    return std::log2(err_coarse / err_fine) / std::log2(dx_coarse / dx_fine);
}

double fitted_order(std::span<const ConvergenceRow> rows) {
    // slope of log2(err) vs log2(dx) by least squares
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const ConvergenceRow& r : rows) {
        if (!(r.avg_err > 0.0)) continue;
        const double x = std::log2(r.dx);
        const double y = std::log2(r.avg_err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

double ellipsoid_volume_exact() {
    return 4.0 / 3.0 * std::numbers::pi * 1.5 * 0.75 * 0.5;
}

namespace {

struct ErrorStats {
    double avg = 0, sd = 0, min = 0, max = 0;
};

ErrorStats summarize(std::span<const double> errors) {
    ErrorStats s;
    s.min = *std::min_element(errors.begin(), errors.end());
    s.max = *std::max_element(errors.begin(), errors.end());
    double sum = 0;
    for (double e : errors) sum += e;
    s.avg = sum / static_cast<double>(errors.size());
    if (errors.size() > 1) {
        double ss = 0;
        for (double e : errors) ss += (e - s.avg) * (e - s.avg);
        s.sd = std::sqrt(ss / static_cast<double>(errors.size() - 1));
    }
    return s;
}

// Shared trial translations: one [0,1)^ndim offset per trial, reused across
// every resolution of the sweep.
std::vector<std::array<double, 3>> make_trial_offsets(const TrialConfig& cfg, int ndim) {
    std::vector<std::array<double, 3>> offsets(static_cast<std::size_t>(cfg.n_trials));
    XorShift64Star rng(cfg.rng_seed);
    for (auto& off : offsets) {
        for (int k = 0; k < ndim; ++k) off[k] = cfg.randomize_centers ? rng.next_unit() : 0.0;
    }
    return offsets;
}

// Direct m and vol at a single level T, driven through a degenerate
// two-sample range [T - dx, T] so the traversal machinery is exercised the
// same way as in full-family runs.
struct SingleLevel {
    double m = 0.0;
    double vol = 0.0;
};

SingleLevel single_level(TraversalMethod method, const ScalarField& psi, const GradientField& grad,
                         double T, double dt) {
    const ScalarField ones = ScalarField::constant(psi.spec, 1.0);
    const LevelRange range(T - dt, T, 1);
    const LevelFamily fam = compute_family(method, psi, ones, grad, range);
    return {fam.m[1], fam.vol[1]};
}

std::vector<ConvergenceRow> rows_from_errors(std::span<const double> dxs,
                                             const std::vector<std::vector<double>>& errors) {
    std::vector<ConvergenceRow> rows(dxs.size());
    for (std::size_t k = 0; k < dxs.size(); ++k) {
        const ErrorStats s = summarize(errors[k]);
        ConvergenceRow& r = rows[k];
        r.dx = dxs[k];
        r.avg_err = s.avg;
        r.sd_err = s.sd;
        r.min_err = s.min;
        r.max_err = s.max;
        r.max_min_ratio = s.min > 0.0 ? s.max / s.min : 0.0;
        if (k > 0) {
            const ConvergenceRow& p = rows[k - 1];
            r.order_avg = convergence_order(p.avg_err, r.avg_err, p.dx, r.dx);
            r.order_min = convergence_order(p.min_err, r.min_err, p.dx, r.dx);
            r.order_max = convergence_order(p.max_err, r.max_err, p.dx, r.dx);
        }
    }
    return rows;
}

}  // namespace

std::vector<ConvergenceRow> run_ellipse2d(const TrialConfig& config, TraversalMethod method) {
    config.validate();
    const auto offsets = make_trial_offsets(config, 2);
    const double semi_axes[2] = {1.5, 0.75};

    std::vector<std::vector<double>> errors(config.resolutions.size());
    for (std::size_t k = 0; k < config.resolutions.size(); ++k) {
        const double dx = config.resolutions[k];
        const GridSpec spec = GridSpec::cube(2, config.domain[0], config.domain[1], dx);
        errors[k].reserve(offsets.size());
        for (const auto& off : offsets) {
            const double center[2] = {off[0], off[1]};
            const ScalarField psi = make_ellipse_field(spec, center, semi_axes);
            const GradientField grad = estimate_gradient(psi);
            const double arc = single_level(method, psi, grad, 0.0, dx).m;
            errors[k].push_back(std::abs(arc - kEllipseArcLength) / kEllipseArcLength);
        }
    }
    return rows_from_errors(config.resolutions, errors);
}

std::vector<ConvergenceRow> run_ellipsoid3d(const TrialConfig& config, EllipsoidQuantity quantity) {
    config.validate();
    // Volume follows the single centered trial of the reference table.
    TrialConfig cfg = config;
    if (quantity == EllipsoidQuantity::Volume) {
        cfg.n_trials = 1;
        cfg.randomize_centers = false;
    }
    const auto offsets = make_trial_offsets(cfg, 3);
    const double semi_axes[3] = {1.5, 0.75, 0.5};
    const double volume_exact = ellipsoid_volume_exact();

    // The streaming naive evaluator keeps 3D sweeps within memory at fine
    // resolutions (no per-cell table); values agree with the traversals to
    // the equivalence tolerance.
    std::vector<std::vector<double>> errors(cfg.resolutions.size());
    for (std::size_t k = 0; k < cfg.resolutions.size(); ++k) {
        const double dx = cfg.resolutions[k];
        const GridSpec spec = GridSpec::cube(3, cfg.domain[0], cfg.domain[1], dx);
        errors[k].reserve(offsets.size());
        for (const auto& off : offsets) {
            const double center[3] = {off[0], off[1], off[2]};
            const ScalarField psi = make_ellipsoid_field(spec, center, semi_axes);
            const GradientField grad = estimate_gradient(psi);
            const SingleLevel lv = single_level(TraversalMethod::Naive, psi, grad, 0.0, dx);
            const double err = quantity == EllipsoidQuantity::Area
                                   ? std::abs(lv.m - kEllipsoidArea) / kEllipsoidArea
                                   : std::abs(lv.vol - volume_exact) / volume_exact;
            errors[k].push_back(err);
        }
    }
    return rows_from_errors(cfg.resolutions, errors);
}

namespace {

double circle_family_truth(double T) {
    // level sets of x^2+y^2-1 are circles of radius sqrt(1+T)
    return 2.0 * std::numbers::pi * std::sqrt(1.0 + T);
}

double mean_relative_error(std::span<const double> values, const LevelRange& range) {
    double acc = 0.0;
    for (int k = 0; k < range.sample_count(); ++k) {
        const double truth = circle_family_truth(range.sample(k));
        acc += std::abs(values[static_cast<std::size_t>(k)] - truth) / truth;
    }
    return acc / range.sample_count();
}

// Walltime of fn repeated `batch` times, in ms per call.
template <typename F>
double timed_batch_ms(F&& fn, int batch) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    for (int b = 0; b < batch; ++b) fn();
    const auto t1 = clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / batch;
}

// Warm-up call whose duration sizes the batch so one measured repetition
// spans at least ~50 ms of work, keeping scheduler jitter small relative to
// the reading.
template <typename F>
int warmup_and_size_batch(F&& fn) {
    const double warm_ms = timed_batch_ms(fn, 1);
    if (warm_ms >= 50.0) return 1;
    return std::min(256, static_cast<int>(std::ceil(50.0 / std::max(warm_ms, 0.01))));
}

}  // namespace

std::vector<FamilyBenchRow> run_family_benchmark(std::span<const int> nts_sweep,
                                                 const FamilyBenchOptions& options) {
    if (nts_sweep.empty()) throw std::invalid_argument("run_family_benchmark: empty sweep");
    for (int n : nts_sweep) {
        if (n < 1) throw std::invalid_argument("run_family_benchmark: nTs must be >= 1");
    }
    if (options.repetitions < 1) throw std::invalid_argument("run_family_benchmark: repetitions must be >= 1");

    const GridSpec spec = GridSpec::cube(2, options.domain[0], options.domain[1], options.dx);
    const double center[2] = {0.0, 0.0};
    const ScalarField psi = make_circle_sdf(spec, center, 1.0, /*squared=*/true);
    const GradientField grad = estimate_gradient(psi);
    const ScalarField ones = ScalarField::constant(spec, 1.0);

    std::vector<FamilyBenchRow> rows;
    rows.reserve(nts_sweep.size());
    for (int nts : nts_sweep) {
        const LevelRange range(options.t_min, options.t_max, nts);
        FamilyBenchRow row;
        row.n_ts = nts;

        LevelFamily causal{range, {}, {}, {}};
        LevelFamily general{range, {}, {}, {}};
        std::vector<double> lengths(static_cast<std::size_t>(range.sample_count()));

        auto run_causal = [&] { causal = compute_family_causal(psi, ones, grad, range); };
        auto run_general = [&] { general = compute_family_general(psi, ones, grad, range); };
        auto run_baseline = [&] {
            for (int k = 0; k < range.sample_count(); ++k) {
                const SegmentSoup soup = extract_isocontour(psi, range.sample(k));
                lengths[static_cast<std::size_t>(k)] = integrate_over_segments(soup, ones);
            }
        };

        // The three methods are measured back to back within each round so
        // slow machine phases hit them alike; per-method minima over the
        // rounds then give comparable floors.
        const int batch_causal = warmup_and_size_batch(run_causal);
        const int batch_general = warmup_and_size_batch(run_general);
        const int batch_baseline = warmup_and_size_batch(run_baseline);
        row.t_causal_ms = row.t_general_ms = row.t_baseline_ms =
            std::numeric_limits<double>::infinity();
        for (int r = 0; r < options.repetitions; ++r) {
            row.t_causal_ms = std::min(row.t_causal_ms, timed_batch_ms(run_causal, batch_causal));
            row.t_general_ms = std::min(row.t_general_ms, timed_batch_ms(run_general, batch_general));
            row.t_baseline_ms =
                std::min(row.t_baseline_ms, timed_batch_ms(run_baseline, batch_baseline));
        }

        row.err_causal = mean_relative_error(causal.m, range);
        row.err_general = mean_relative_error(general.m, range);
        row.err_baseline = mean_relative_error(lengths, range);
        rows.push_back(row);
    }
    return rows;
}

std::vector<PhotogeoRow> run_photogeo(const ScalarField& image, const ScalarField& psi,
                                      int n_levels, TraversalMethod method) {
    if (n_levels < 1) throw std::invalid_argument("run_photogeo: n_levels must be >= 1");
    const double psi_min = psi.min_value();
    if (!(psi_min < 0.0)) {
        throw std::invalid_argument("run_photogeo: psi must dip below 0 (nondegenerate range)");
    }
    const LevelRange range(psi_min, 0.0, n_levels);
    const GradientField grad = estimate_gradient(psi);
    const std::vector<double> f = mean_intensity_profile(image, psi, grad, range, method);

    std::vector<PhotogeoRow> rows(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        rows[k].T = range.sample(static_cast<int>(k));
        rows[k].T_normalized = rows[k].T / std::abs(psi_min);
        rows[k].f = f[k];
    }
    return rows;
}

std::vector<PhotogeoRow> run_photogeo_files(const std::string& image_path,
                                            const std::string& psi_source,
                                            int n_levels, TraversalMethod method) {
    const ScalarField image = load_pgm(image_path);

    if (psi_source.rfind("circle:", 0) == 0) {
        double c0 = 0, c1 = 0, r = 0;
        if (std::sscanf(psi_source.c_str(), "circle:%lf,%lf,%lf", &c0, &c1, &r) != 3 || !(r > 0)) {
            throw std::invalid_argument("run_photogeo: psi spec must be circle:c0,c1,r with r > 0");
        }
        const double center[2] = {c0, c1};
        const ScalarField psi = make_circle_sdf(image.spec, center, r, /*squared=*/false);
        return run_photogeo(image, psi, n_levels, method);
    }
    const ScalarField psi = read_field_bin(psi_source);
    if (psi.spec != image.spec) {
        throw std::invalid_argument("run_photogeo: psi field grid does not match the image");
    }
    return run_photogeo(image, psi, n_levels, method);
}

namespace {

void append_number(std::string& out, double v) {
    if (std::isnan(v)) {
        out += "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    out += buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("short write to '" + path + "'");
}

}  // namespace

std::string format_csv(std::span<const ConvergenceRow> rows) {
    std::string out = "dx,avg_err,order_avg,sd_err,min_err,order_min,max_err,order_max,max_min_ratio\n";
    for (const ConvergenceRow& r : rows) {
        const double cols[] = {r.dx,      r.avg_err, r.order_avg, r.sd_err,       r.min_err,
                               r.order_min, r.max_err, r.order_max, r.max_min_ratio};
        for (std::size_t c = 0; c < std::size(cols); ++c) {
            if (c) out += ',';
            append_number(out, cols[c]);
        }
        out += '\n';
    }
    return out;
}

std::string format_csv(std::span<const FamilyBenchRow> rows) {
    std::string out = "nTs,t_causal,t_general,t_baseline,err_causal,err_general,err_baseline\n";
    for (const FamilyBenchRow& r : rows) {
        out += std::to_string(r.n_ts);
        const double cols[] = {r.t_causal_ms, r.t_general_ms, r.t_baseline_ms,
                               r.err_causal,  r.err_general,  r.err_baseline};
        for (double c : cols) {
            out += ',';
            append_number(out, c);
        }
        out += '\n';
    }
    return out;
}

std::string format_csv(std::span<const PhotogeoRow> rows) {
    std::string out = "T,T_normalized,f\n";
    for (const PhotogeoRow& r : rows) {
        append_number(out, r.T);
        out += ',';
        append_number(out, r.T_normalized);
        out += ',';
        append_number(out, r.f);
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, std::span<const ConvergenceRow> rows) {
    write_text(path, format_csv(rows));
}
void write_csv(const std::string& path, std::span<const FamilyBenchRow> rows) {
    write_text(path, format_csv(rows));
}
void write_csv(const std::string& path, std::span<const PhotogeoRow> rows) {
    write_text(path, format_csv(rows));
}

}  // namespace coarea
