#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "coarea/experiments.hpp"

using coarea::ConvergenceRow;
using coarea::TrialConfig;
using coarea::XorShift64Star;

TEST_CASE("convergence order on synthetic error sequences") {
    // error halving with dx halving -> order 1; quartering -> order 2
    CHECK(coarea::convergence_order(1e-2, 5e-3, 0.2, 0.1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(coarea::convergence_order(1e-2, 2.5e-3, 0.2, 0.1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(coarea::convergence_order(0.0, 1e-3, 0.2, 0.1) == 0.0);

    std::vector<ConvergenceRow> rows(3);
    rows[0] = {.dx = 0.2, .avg_err = 4e-2};
    rows[1] = {.dx = 0.1, .avg_err = 1e-2};
    rows[2] = {.dx = 0.05, .avg_err = 2.5e-3};
    CHECK(coarea::fitted_order(rows) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("xorshift generator is deterministic and uniform-ish") {
    XorShift64Star a(12345), b(12345);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    XorShift64Star r(99);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = r.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(sum / 20000.0 == doctest::Approx(0.5).epsilon(0.02));

    // zero seed is remapped, not stuck at zero
    XorShift64Star z(0);
    CHECK(z.next_u64() != 0);
}

TEST_CASE("TrialConfig validation") {
    TrialConfig cfg;
    cfg.resolutions = {0.2, 0.1};
    cfg.n_trials = 2;
    CHECK_NOTHROW(cfg.validate());

    cfg.resolutions = {0.1, 0.2};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.resolutions = {0.2, 0.1};
    cfg.n_trials = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("ellipse study rows are sane and deterministic") {
    TrialConfig cfg;
    cfg.resolutions = {0.4, 0.2};
    cfg.n_trials = 3;
    cfg.rng_seed = 77;

    const auto rows = coarea::run_ellipse2d(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.min_err <= r.avg_err);
        CHECK(r.avg_err <= r.max_err);
        CHECK(r.avg_err > 0.0);
        CHECK(r.avg_err < 0.2);
    }
    CHECK(rows[0].order_avg == 0.0);  // first row has no predecessor

    const auto again = coarea::run_ellipse2d(cfg);
    CHECK(coarea::format_csv(rows) == coarea::format_csv(again));

    // an untranslated single trial is reproducible as well
    TrialConfig centered = cfg;
    centered.n_trials = 1;
    centered.randomize_centers = false;
    const auto c1 = coarea::run_ellipse2d(centered);
    const auto c2 = coarea::run_ellipse2d(centered);
    CHECK(coarea::format_csv(c1) == coarea::format_csv(c2));
}

TEST_CASE("trial translations are shared across resolutions") {
    // with one trial, the relative error at a fixed dx must not depend on
    // which other resolutions are present in the sweep
    TrialConfig wide;
    wide.resolutions = {0.4, 0.2};
    wide.n_trials = 1;
    wide.rng_seed = 31;
    TrialConfig narrow = wide;
    narrow.resolutions = {0.2};

    const auto rows_wide = coarea::run_ellipse2d(wide);
    const auto rows_narrow = coarea::run_ellipse2d(narrow);
    CHECK(rows_wide[1].avg_err == doctest::Approx(rows_narrow[0].avg_err).epsilon(1e-15));
}

TEST_CASE("ellipsoid study smoke run") {
    TrialConfig cfg;
    cfg.resolutions = {0.5, 0.25};
    cfg.n_trials = 2;
    cfg.rng_seed = 5;

    const auto area = coarea::run_ellipsoid3d(cfg, coarea::EllipsoidQuantity::Area);
    REQUIRE(area.size() == 2);
    CHECK(area[1].avg_err < area[0].avg_err);

    const auto vol = coarea::run_ellipsoid3d(cfg, coarea::EllipsoidQuantity::Volume);
    REQUIRE(vol.size() == 2);
    // single centered trial: min == max == avg
    CHECK(vol[0].min_err == vol[0].max_err);
    CHECK(vol[1].avg_err < vol[0].avg_err);
}

TEST_CASE("CSV formatting rules") {
    std::vector<ConvergenceRow> rows(1);
    rows[0].dx = 0.2;
    rows[0].avg_err = 2.946e-3;
    const std::string csv = coarea::format_csv(rows);

    CHECK(csv.find("dx,avg_err,order_avg,") == 0);
    CHECK(csv.find("2.00000e-01") != std::string::npos);
    CHECK(csv.find("2.94600e-03") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.back() == '\n');

    std::vector<coarea::PhotogeoRow> prow(1);
    prow[0].T = -1.0;
    prow[0].T_normalized = -0.5;
    prow[0].f = std::nan("");
    const std::string pcsv = coarea::format_csv(prow);
    CHECK(pcsv.find("nan") != std::string::npos);
}

TEST_CASE("family benchmark smoke run at coarse resolution") {
    coarea::FamilyBenchOptions opt;
    opt.dx = 0.1;  // keep the unit test light
    opt.repetitions = 1;
    const int sweep[] = {5, 10};
    const auto rows = coarea::run_family_benchmark(sweep, opt);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.err_causal < 0.05);
        CHECK(r.err_general < 0.05);
        CHECK(r.err_baseline < 0.05);
        CHECK(r.t_causal_ms >= 0.0);
    }
    // errors do not depend on timing repetitions
    CHECK(rows[0].err_causal == doctest::Approx(rows[0].err_general).epsilon(0.5));
}
