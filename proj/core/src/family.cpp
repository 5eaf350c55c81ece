#include "coarea/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include "coarea/frac_volume.hpp"
#include "coarea/summation.hpp"

namespace coarea {

LevelRange::LevelRange(double t_min_, double t_max_, int n_steps_)
    : t_min(t_min_), t_max(t_max_), n_steps(n_steps_) {
    if (!(t_min < t_max)) throw std::invalid_argument("LevelRange: t_min must be below t_max");
    if (n_steps < 1) throw std::invalid_argument("LevelRange: n_steps must be positive");
    if (!std::isfinite(t_min) || !std::isfinite(t_max)) {
        throw std::invalid_argument("LevelRange: bounds must be finite");
    }
}

namespace {

double product(std::span<const double> v) {
    double p = 1.0;
    for (double x : v) p *= x;
    return p;
}

}  // namespace

double cell_M_contribution(const CellModel& model, double h_i,
                           std::span<const double> spacing, double T) {
    const double cv = product(spacing);
    if (model.max_psi <= T) return cv * h_i * model.grad_norm;  // full cap (degenerate: 0)
    if (model.min_psi >= T) return 0.0;
    const double tau = (T - model.min_psi) / model.total_increase;
    return cv * h_i * model.grad_norm * fractional_volume(tau, model.d);
}

double cell_area_element(const CellModel& model,
                         std::span<const double> spacing, double T) {
    if (!(model.total_increase > 0.0)) return 0.0;  // no level set crosses a constant cell
    if (model.max_psi <= T || model.min_psi >= T) return 0.0;
    const double tau = (T - model.min_psi) / model.total_increase;
    const double dv = fractional_volume_derivative(tau, model.d);
    return product(spacing) * model.grad_norm / model.total_increase * dv;
}

namespace {

// Per-cell data the optimized traversals precompute once (the Initialize
// step). The scan over the active list is bandwidth-bound, so the
// classification bounds are packed as (max, min) pairs in one array and the
// remaining payload is touched only for full transitions and partial cells.
struct CellTable {
    double cell_vol = 0.0;
    std::vector<double> bounds;     // [max_0, min_0, max_1, min_1, ...]
    std::vector<double> m_weight;   // h * |grad| * cell_volume
    std::vector<double> a_weight;   // m_weight / total_increase (0 for degenerate)
    std::vector<double> inv_total;  // 1 / total_increase (0 for degenerate)
    std::vector<double> d1, d2, d3; // ascending fractional increases (d3 unused in 2D)

    std::size_t size() const { return m_weight.size(); }
};

template <int N>
CellTable build_table(const ScalarField& psi, const ScalarField& h, const GradientField& grad) {
    const std::size_t n = psi.spec.point_count();
    CellTable t;
    t.cell_vol = psi.spec.cell_volume();
    t.bounds.resize(2 * n);
    t.m_weight.resize(n);
    t.a_weight.resize(n);
    t.inv_total.resize(n);
    t.d1.resize(n);
    t.d2.resize(n);
    if constexpr (N == 3) t.d3.resize(n);

    std::array<double, 3> sp{};
    for (int k = 0; k < N; ++k) sp[k] = psi.spec.spacing(k);

    for (std::size_t i = 0; i < n; ++i) {
        const double* g = grad.components.data() + i * N;
        double inc[3];
        double norm2 = 0.0;
        double total = 0.0;
        for (int k = 0; k < N; ++k) {
            inc[k] = std::abs(sp[k] * g[k]);
            total += inc[k];
            norm2 += g[k] * g[k];
        }
        if constexpr (N == 2) {
            if (inc[0] > inc[1]) std::swap(inc[0], inc[1]);
        } else {
            if (inc[0] > inc[1]) std::swap(inc[0], inc[1]);
            if (inc[1] > inc[2]) std::swap(inc[1], inc[2]);
            if (inc[0] > inc[1]) std::swap(inc[0], inc[1]);
        }
        const double psi_i = psi.values[i];
        t.bounds[2 * i] = psi_i + 0.5 * total;      // max
        t.bounds[2 * i + 1] = psi_i - 0.5 * total;  // min
        const double w = h.values[i] * std::sqrt(norm2) * t.cell_vol;
        t.m_weight[i] = w;
        if (total > 0.0) {
            const double inv = 1.0 / total;
            t.inv_total[i] = inv;
            t.a_weight[i] = w * inv;
            t.d1[i] = inc[0] * inv;
            t.d2[i] = inc[1] * inv;
            if constexpr (N == 3) t.d3[i] = inc[2] * inv;
        } else {
            t.inv_total[i] = 0.0;
            t.a_weight[i] = 0.0;
            t.d1[i] = 0.0;
            t.d2[i] = 0.0;
            if constexpr (N == 3) t.d3[i] = 0.0;
        }
    }
    return t;
}

void require_matching(const ScalarField& psi, const ScalarField& h, const GradientField& grad) {
    if (psi.spec != h.spec || psi.spec != grad.spec) {
        throw std::invalid_argument("family: psi, h and gradient must share one grid");
    }
}

LevelFamily make_empty_family(const LevelRange& range) {
    const auto n = static_cast<std::size_t>(range.sample_count());
    return LevelFamily{range, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
}

std::vector<std::uint32_t> all_indices(std::size_t n) {
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("family: grid too large for traversal index type");
    }
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    return idx;
}

template <int N>
LevelFamily family_naive_impl(const ScalarField& psi, const ScalarField& h,
                              const GradientField& grad, const LevelRange& range) {
    LevelFamily fam = make_empty_family(range);
    const std::size_t n = psi.spec.point_count();
    const double cell_vol = psi.spec.cell_volume();
    std::array<double, 3> sp{};
    for (int k = 0; k < N; ++k) sp[k] = psi.spec.spacing(k);
    const std::span<const double> spacing(sp.data(), N);

    for (int k = 0; k < range.sample_count(); ++k) {
        const double T = range.sample(k);
        PairwiseSum sM, sm, svol;
        for (std::size_t i = 0; i < n; ++i) {
            const double* g = grad.components.data() + i * N;
            const CellModel model = build_cell_model(psi.values[i], {g, N}, spacing);
            const double hi = h.values[i];
            sM.add(cell_M_contribution(model, hi, spacing, T));
            sm.add(hi * cell_area_element(model, spacing, T));
            if (model.max_psi <= T) {
                svol.add(cell_vol);
            } else if (model.min_psi < T) {
                const double tau = (T - model.min_psi) / model.total_increase;
                svol.add(cell_vol * fractional_volume(tau, model.d));
            }
        }
        fam.M[k] = sM.value();
        fam.m[k] = sm.value();
        fam.vol[k] = svol.value();
    }
    return fam;
}

// One active-list entry at one level value. Keeps the classification order
// of classify_cell: full wins ties at the max, empty wins at the min.
template <int N>
struct StepAccum {
    PairwiseSum M, m, vol;

    // Returns true when the cell became full (leaves the active set).
    inline bool visit(const CellTable& t, std::size_t i, double T, KahanSum& M_full,
                      KahanSum& vol_full) {
        const double mx = t.bounds[2 * i];
        if (mx <= T) {
            const double Mi = t.m_weight[i];
            M.add(Mi);
            vol.add(t.cell_vol);
            M_full.add(Mi);
            vol_full.add(t.cell_vol);
            return true;
        }
        const double mn = t.bounds[2 * i + 1];
        if (mn >= T) return false;  // empty: contributes nothing yet
        const double tau = (T - mn) * t.inv_total[i];
        double v, dv;
        if constexpr (N == 2) {
            v = fv::v2(tau, t.d1[i], t.d2[i]);
            dv = fv::dv2(tau, t.d1[i], t.d2[i]);
        } else {
            v = fv::v3(tau, t.d1[i], t.d2[i], t.d3[i]);
            dv = fv::dv3(tau, t.d1[i], t.d2[i], t.d3[i]);
        }
        M.add(t.m_weight[i] * v);
        m.add(t.a_weight[i] * dv);
        vol.add(t.cell_vol * v);
        return false;
    }
};

template <int N>
LevelFamily family_general_impl(const ScalarField& psi, const ScalarField& h,
                                const GradientField& grad, const LevelRange& range,
                                TraversalStats* stats) {
    LevelFamily fam = make_empty_family(range);
    const CellTable table = build_table<N>(psi, h, grad);
    std::vector<std::uint32_t> not_full = all_indices(table.size());

    KahanSum M_full, vol_full;
    for (int k = 0; k < range.sample_count(); ++k) {
        const double T = range.sample(k);
        if (stats) {
            stats->active_at_step.push_back(not_full.size());
            stats->cell_visits += not_full.size();
        }
        const double M_base = M_full.value();
        const double vol_base = vol_full.value();

        StepAccum<N> acc;
        std::size_t w = 0;
        for (std::size_t r = 0; r < not_full.size(); ++r) {
            const std::uint32_t i = not_full[r];
            if (!acc.visit(table, i, T, M_full, vol_full)) not_full[w++] = i;
        }
        not_full.resize(w);

        fam.M[k] = M_base + acc.M.value();
        fam.m[k] = acc.m.value();
        fam.vol[k] = vol_base + acc.vol.value();
    }
    return fam;
}

// Face neighbors of a linear index; invokes fn(j) for each valid one.
template <int N, typename F>
inline void for_each_neighbor(const GridSpec& spec, std::size_t i, F&& fn) {
    if constexpr (N == 2) {
        const std::size_t d0 = spec.dim(0), d1 = spec.dim(1);
        const std::size_t i0 = i / d1, i1 = i % d1;
        if (i0 > 0) fn(i - d1);
        if (i0 + 1 < d0) fn(i + d1);
        if (i1 > 0) fn(i - 1);
        if (i1 + 1 < d1) fn(i + 1);
    } else {
        const std::size_t d0 = spec.dim(0), d1 = spec.dim(1), d2 = spec.dim(2);
        const std::size_t s0 = d1 * d2;
        const std::size_t i0 = i / s0;
        const std::size_t rem = i % s0;
        const std::size_t i1 = rem / d2, i2 = rem % d2;
        if (i0 > 0) fn(i - s0);
        if (i0 + 1 < d0) fn(i + s0);
        if (i1 > 0) fn(i - d2);
        if (i1 + 1 < d1) fn(i + d2);
        if (i2 > 0) fn(i - 1);
        if (i2 + 1 < d2) fn(i + 1);
    }
}

template <int N>
LevelFamily family_causal_impl(const ScalarField& psi, const ScalarField& h,
                               const GradientField& grad, const LevelRange& range,
                               TraversalStats* stats) {
    LevelFamily fam = make_empty_family(range);
    const CellTable table = build_table<N>(psi, h, grad);
    const GridSpec& spec = psi.spec;

    const std::size_t n = table.size();
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("family: grid too large for traversal index type");
    }
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::uint32_t> partial;

    for (std::size_t i = 0; i < n; ++i) {
        if (table.bounds[2 * i + 1] < range.t_min) {
            partial.push_back(static_cast<std::uint32_t>(i));
            visited[i] = 1;
        }
    }
    if (partial.empty()) {
        // T_min sits below every cell: start the front at the global minimum
        // so it can activate once T passes it.
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) gmin = std::min(gmin, table.bounds[2 * i + 1]);
        for (std::size_t i = 0; i < n; ++i) {
            if (table.bounds[2 * i + 1] == gmin) {
                partial.push_back(static_cast<std::uint32_t>(i));
                visited[i] = 1;
            }
        }
    }
    std::size_t visited_count = partial.size();

    KahanSum M_full, vol_full;
    for (int k = 0; k < range.sample_count(); ++k) {
        const double T = range.sample(k);
        if (stats) stats->active_at_step.push_back(partial.size());
        const double M_base = M_full.value();
        const double vol_base = vol_full.value();

        StepAccum<N> acc;
        std::size_t w = 0;
        // The list grows while it is scanned; appended indices are picked up
        // by the same pass because the loop re-reads partial.size().
        for (std::size_t r = 0; r < partial.size(); ++r) {
            const std::uint32_t i = partial[r];
            if (stats) ++stats->cell_visits;

            for_each_neighbor<N>(spec, i, [&](std::size_t j) {
                if (!visited[j] && table.bounds[2 * j + 1] < T) {
                    visited[j] = 1;
                    ++visited_count;
                    partial.push_back(static_cast<std::uint32_t>(j));
                }
            });

            if (!acc.visit(table, i, T, M_full, vol_full)) partial[w++] = i;
        }
        partial.resize(w);

        if (stats) stats->visited_at_step.push_back(visited_count);
        fam.M[k] = M_base + acc.M.value();
        fam.m[k] = acc.m.value();
        fam.vol[k] = vol_base + acc.vol.value();
    }
    return fam;
}

}  // namespace

LevelFamily compute_family_naive(const ScalarField& psi, const ScalarField& h,
                                 const GradientField& grad, const LevelRange& range) {
    require_matching(psi, h, grad);
    return psi.spec.ndim() == 2 ? family_naive_impl<2>(psi, h, grad, range)
                                : family_naive_impl<3>(psi, h, grad, range);
}

LevelFamily compute_family_general(const ScalarField& psi, const ScalarField& h,
                                   const GradientField& grad, const LevelRange& range,
                                   TraversalStats* stats) {
    require_matching(psi, h, grad);
    return psi.spec.ndim() == 2 ? family_general_impl<2>(psi, h, grad, range, stats)
                                : family_general_impl<3>(psi, h, grad, range, stats);
}

LevelFamily compute_family_causal(const ScalarField& psi, const ScalarField& h,
                                  const GradientField& grad, const LevelRange& range,
                                  TraversalStats* stats) {
    require_matching(psi, h, grad);
    return psi.spec.ndim() == 2 ? family_causal_impl<2>(psi, h, grad, range, stats)
                                : family_causal_impl<3>(psi, h, grad, range, stats);
}

LevelFamily compute_family(TraversalMethod method,
                           const ScalarField& psi, const ScalarField& h,
                           const GradientField& grad, const LevelRange& range) {
    switch (method) {
        case TraversalMethod::Naive: return compute_family_naive(psi, h, grad, range);
        case TraversalMethod::General: return compute_family_general(psi, h, grad, range);
        case TraversalMethod::Causal: return compute_family_causal(psi, h, grad, range);
    }
    throw std::invalid_argument("compute_family: unknown method");
}

std::vector<double> differentiate_family(std::span<const double> M_values, double dt) {
    if (M_values.size() < 2) {
        throw std::invalid_argument("differentiate_family: need at least 2 samples");
    }
    if (!(dt > 0.0)) throw std::invalid_argument("differentiate_family: dt must be positive");
    const std::size_t n = M_values.size();
    std::vector<double> m(n);
    for (std::size_t k = 0; k + 1 < n; ++k) m[k] = (M_values[k + 1] - M_values[k]) / dt;
    m[n - 1] = (M_values[n - 1] - M_values[n - 2]) / dt;
    return m;
}

std::vector<double> mean_intensity_profile(const ScalarField& I, const ScalarField& psi,
                                           const GradientField& grad, const LevelRange& range,
                                           TraversalMethod method) {
    if (I.spec != psi.spec) {
        throw std::invalid_argument("mean_intensity_profile: image and psi must share one grid");
    }
    const LevelFamily with_I = compute_family(method, psi, I, grad, range);
    const ScalarField ones = ScalarField::constant(psi.spec, 1.0);
    const LevelFamily with_1 = compute_family(method, psi, ones, grad, range);

    const double floor = 1e-12 * psi.spec.cell_volume();
    std::vector<double> f(with_I.m.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = with_1.m[k] < floor ? std::numeric_limits<double>::quiet_NaN()
                                   : with_I.m[k] / with_1.m[k];
    }
    return f;
}

}  // namespace coarea
