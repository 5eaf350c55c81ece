// Experiment harness around the coarea library: convergence studies of the
// level-set integrals, the coupled-vs-explicit family benchmark, and the
// photo-geometric intensity profile. All outputs are CSV.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coarea/experiments.hpp"
#include "coarea/field_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

coarea::TraversalMethod parse_method(const std::string& name) {
    if (name == "causal") return coarea::TraversalMethod::Causal;
    if (name == "general") return coarea::TraversalMethod::General;
    if (name == "naive") return coarea::TraversalMethod::Naive;
    throw CLI::ValidationError("--method", "expected causal|general|naive");
}

struct CommonOpts {
    std::vector<double> dx_list;
    int trials = 50;
    std::uint64_t seed = 1;
    std::string out;
    std::string method = "general";
};

void add_common(CLI::App* cmd, CommonOpts& o, std::vector<double> default_dx) {
    cmd->add_option("--dx-list", o.dx_list, "grid resolutions, strictly decreasing")
        ->delimiter(',')
        ->default_val(default_dx);
    cmd->add_option("--trials", o.trials, "number of randomly translated trials");
    cmd->add_option("--seed", o.seed, "RNG seed for the trial translations");
    cmd->add_option("--out", o.out, "output CSV path")->required();
    cmd->add_option("--method", o.method, "traversal: causal|general|naive");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-set family integration experiments"};
    app.require_subcommand(1);

    CommonOpts ell, ellipsoid;
    std::string quantity = "area";

    CLI::App* ellipse2d = app.add_subcommand(
        "ellipse2d", "arc-length convergence study of a translated ellipse");
    add_common(ellipse2d, ell, {0.2, 0.1, 0.05, 0.025});

    CLI::App* ellipsoid3d = app.add_subcommand(
        "ellipsoid3d", "surface-area or volume convergence study of an ellipsoid");
    add_common(ellipsoid3d, ellipsoid, {0.2, 0.1, 0.05});
    ellipsoid3d->add_option("--quantity", quantity, "area|volume")
        ->check(CLI::IsMember({"area", "volume"}));

    // family benchmark
    std::vector<int> nts_list;
    double tmin = -0.5, tmax = 2.0, bench_dx = 0.025;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand(
        "family-bench", "timing and accuracy of coupled vs per-level integration");
    bench->add_option("--nts", nts_list, "list of T-interval counts")->delimiter(',');
    bench->add_option("--tmin", tmin, "range start");
    bench->add_option("--tmax", tmax, "range end");
    bench->add_option("--dx", bench_dx, "grid resolution");
    bench->add_option("--out", bench_out, "output CSV path")->required();

    // photo-geometric profile
    std::string image_path, psi_source, photo_out, photo_method = "general";
    int n_levels = 50;
    CLI::App* photo = app.add_subcommand(
        "photogeo", "mean image intensity along the iso-contours of psi");
    photo->add_option("--image", image_path, "PGM image")->required();
    photo->add_option("--psi", psi_source,
                      "level-set source: circle:c0,c1,r or a CAF1 field file")
        ->required();
    photo->add_option("--nts", n_levels, "number of T intervals in [min psi, 0]");
    photo->add_option("--out", photo_out, "output CSV path")->required();
    photo->add_option("--method", photo_method, "traversal: causal|general|naive");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (ellipse2d->parsed()) {
            coarea::TrialConfig cfg;
            cfg.resolutions = ell.dx_list;
            cfg.n_trials = ell.trials;
            cfg.rng_seed = ell.seed;
            const auto rows = coarea::run_ellipse2d(cfg, parse_method(ell.method));
            coarea::write_csv(ell.out, rows);
        } else if (ellipsoid3d->parsed()) {
            coarea::TrialConfig cfg;
            cfg.resolutions = ellipsoid.dx_list;
            cfg.n_trials = ellipsoid.trials;
            cfg.rng_seed = ellipsoid.seed;
            const auto q = quantity == "area" ? coarea::EllipsoidQuantity::Area
                                              : coarea::EllipsoidQuantity::Volume;
            const auto rows = coarea::run_ellipsoid3d(cfg, q);
            coarea::write_csv(ellipsoid.out, rows);
        } else if (bench->parsed()) {
            if (nts_list.empty()) {
                for (int n = 5; n <= 200; n += 5) nts_list.push_back(n);
            }
            coarea::FamilyBenchOptions opt;
            opt.t_min = tmin;
            opt.t_max = tmax;
            opt.dx = bench_dx;
            const auto rows = coarea::run_family_benchmark(nts_list, opt);
            coarea::write_csv(bench_out, rows);
        } else if (photo->parsed()) {
            const auto rows = coarea::run_photogeo_files(image_path, psi_source, n_levels,
                                                         parse_method(photo_method));
            coarea::write_csv(photo_out, rows);
        }
    } catch (const coarea::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const coarea::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitIo;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}
