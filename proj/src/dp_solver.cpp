#include "wso/dp_solver.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wso/errors.hpp"

namespace wso {

namespace {

// Nodes with |z - mu| beyond this many sigmas give exp(-t^2/2) == +0.0 in
// double (the cutoff is 38.61), so skipping them leaves every sum bit-exact.
constexpr double kNodeCut = 39.0;

std::vector<double> stage_grid(double w, int M) {
    std::vector<double> g(static_cast<std::size_t>(2 * M));
    for (int m = 1; m <= 2 * M; ++m)
        g[static_cast<std::size_t>(m - 1)] = w * (static_cast<double>(m) / M);
    return g;
}

// eq-style grid quadrature: tail probability times the f-weighted average of
// next-stage values over the nodes whose pdf factor does not underflow.
double eval_candidate(double q, double x, std::span<const double> grid,
                      std::span<const double> value, double c, double r,
                      const ReturnModel& model) {
    const double qx = q * x;
    const double alpha = (1.0 + r) - (1.0 + r) / q;
    const double a = alpha - c / qx;
    const double tail = 1.0 - model.cdf(a);

    const double y_lo = c + (model.mu - kNodeCut * model.sigma - alpha) * qx;
    const double y_hi = c + (model.mu + kNodeCut * model.sigma - alpha) * qx;
    const auto first = std::lower_bound(grid.begin(), grid.end(), y_lo);
    const auto last = std::upper_bound(first, grid.end(), y_hi);

    double num = 0.0;
    double den = 0.0;
    for (auto it = first; it != last; ++it) {
        const std::size_t i = static_cast<std::size_t>(it - grid.begin());
        const double z = alpha + (grid[i] - c) / qx;
        const double t = (z - model.mu) / model.sigma;
        const double g = std::exp(-0.5 * t * t);
        num += value[i] * g;
        den += g;
    }
    if (den == 0.0) return 0.0;  // no reachable mass on the grid
    return tail * (num / den);
}

struct SearchHit {
    double q;
    double value;
};

// One refinement pass: scan candidates in ascending q, strictly greater
// replaces, ties keep the incumbent.
template <typename Gen>
SearchHit refine(SearchHit best, int m_lo, int m_hi, Gen cand, double x,
                 std::span<const double> grid, std::span<const double> value,
                 double c, double r, const ReturnModel& model) {
    for (int m = m_lo; m <= m_hi; ++m) {
        if (m == 0) continue;  // the incumbent itself
        double q = cand(m);
        if (q <= 0.0) continue;
        if (q > 1.0) q = 1.0;
        const double s = eval_candidate(q, x, grid, value, c, r, model);
        if (s > best.value) best = SearchHit{q, s};
    }
    return best;
}

SearchHit grid_search(double x, std::span<const double> grid,
                      std::span<const double> value, double c, double r,
                      const ReturnModel& model) {
    SearchHit best{0.01, eval_candidate(0.01, x, grid, value, c, r, model)};
    for (int m = 2; m <= 99; ++m) {
        const double q = 0.01 * m;
        const double s = eval_candidate(q, x, grid, value, c, r, model);
        if (s > best.value) best = SearchHit{q, s};
    }
    const double q1 = best.q;
    best = refine(best, -9, 9, [q1](int m) { return q1 + 0.001 * m; }, x, grid,
                  value, c, r, model);
    const double q2 = best.q;
    best = refine(best, -9, 10, [q2](int m) { return q2 + 0.0001 * m; }, x, grid,
                  value, c, r, model);
    return best;
}

Surface solve_kernel(const CashFlowSchedule& s, const ThresholdSequence& t,
                     const ReturnModel& model, std::span<const double> hazards,
                     const SolverConfig& config) {
    const int k = t.horizon();
    if (s.horizon() != k)
        throw validation_error("schedule and thresholds disagree on the horizon");
    if (!hazards.empty() && static_cast<int>(hazards.size()) != k)
        throw validation_error("hazard sequence length must equal the horizon");
    const int M = config.grid_resolution;
    if (M < 10) throw validation_error("grid resolution must be at least 10");
    const int n = 2 * M;

    Surface out;
    out.M = M;
    out.disaster = t.disaster;
    out.bond_rate = t.bond_rate;
    out.stages.resize(static_cast<std::size_t>(k));
    const double r = t.bond_rate;

#ifdef _OPENMP
    const int nthreads = config.threads > 0 ? config.threads : omp_get_max_threads();
#endif

    // Stage k-1 closed form, mortality-mixed when hazards are present.
    {
        auto& st = out.stages[static_cast<std::size_t>(k - 1)];
        st.w = t.w[static_cast<std::size_t>(k - 1)];
        st.grid = stage_grid(st.w, M);
        st.value.assign(static_cast<std::size_t>(n), 1.0);
        st.weight.assign(static_cast<std::size_t>(n), 0.0);
        const double p = hazards.empty() ? 0.0 : hazards[static_cast<std::size_t>(k - 1)];
        for (int i = 0; i < M - 1; ++i) {
            const double x = st.grid[static_cast<std::size_t>(i)];
            const double base = 1.0 - model.cdf(st.w * (1.0 + r) / x);
            const double vk_x = x >= t.disaster ? 1.0 : 0.0;
            st.value[static_cast<std::size_t>(i)] = (1.0 - p) * base + p * vk_x;
            st.weight[static_cast<std::size_t>(i)] = 1.0;
        }
    }

    for (int stage = k - 2; stage >= 0; --stage) {
        auto& st = out.stages[static_cast<std::size_t>(stage)];
        const auto& next = out.stages[static_cast<std::size_t>(stage + 1)];
        st.w = t.w[static_cast<std::size_t>(stage)];
        st.grid = stage_grid(st.w, M);
        st.value.assign(static_cast<std::size_t>(n), 1.0);
        st.weight.assign(static_cast<std::size_t>(n), 0.0);
        const double c = s.flows[static_cast<std::size_t>(stage + 1)];
        const double p = hazards.empty() ? 0.0 : hazards[static_cast<std::size_t>(stage)];
        const double w_next = next.w;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
#endif
        for (int i = 0; i < M - 1; ++i) {
            const double x = st.grid[static_cast<std::size_t>(i)];
            const double vk_x = x >= t.disaster ? 1.0 : 0.0;
            const double theta = (1.0 + r) * x + c;

            double proposal;
            if (theta >= w_next) {
                proposal = 1.0;
            } else if (theta >= next.grid.front()) {
                const auto it =
                    std::upper_bound(next.grid.begin(), next.grid.end(), theta);
                const double base = next.value[static_cast<std::size_t>(
                    it - next.grid.begin() - 1)];
                proposal = (1.0 - p) * base + p * vk_x;
            } else {
                proposal = (1.0 - p) * 0.0 + p * vk_x;
            }

            const SearchHit hit = grid_search(x, next.grid, next.value, c, r, model);
            const double V = (1.0 - p) * hit.value + p * vk_x;
            if (proposal < V) {
                st.value[static_cast<std::size_t>(i)] = V;
                st.weight[static_cast<std::size_t>(i)] = hit.q;
            } else {
                st.value[static_cast<std::size_t>(i)] = proposal;
                st.weight[static_cast<std::size_t>(i)] = 0.0;
            }
        }
    }

    out.v0_at_c0 = surface_value_at(out, 0, s.flows[0]);
    if (!hazards.empty()) {
        double survival = 1.0;
        for (double p : hazards) survival *= 1.0 - p;
        out.residual_survival = survival;
        out.lower_bound = out.v0_at_c0 - survival;
    }
    return out;
}

}  // namespace

double surface_value_at(const Surface& s, int stage, double x) {
    if (stage < 0 || stage >= s.horizon())
        throw validation_error("stage out of range");
    const auto& st = s.stages[static_cast<std::size_t>(stage)];
    if (x >= st.grid.back()) return 1.0;
    if (x < st.grid.front()) return 0.0;
    const auto it = std::upper_bound(st.grid.begin(), st.grid.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - st.grid.begin() - 1);
    if (st.grid[j] == x) return st.value[j];
    const double lo = st.grid[j];
    const double hi = st.grid[j + 1];
    return st.value[j] + (x - lo) / (hi - lo) * (st.value[j + 1] - st.value[j]);
}

std::vector<double> terminal_stage_values(const ThresholdSequence& t,
                                          const ReturnModel& model, int M) {
    const int k = t.horizon();
    const double w = t.w[static_cast<std::size_t>(k - 1)];
    if (!(w > 0.0)) throw validation_error("terminal threshold must be positive");
    const auto grid = stage_grid(w, M);
    std::vector<double> v(grid.size(), 1.0);
    for (int i = 0; i < M - 1; ++i) {
        const double x = grid[static_cast<std::size_t>(i)];
        v[static_cast<std::size_t>(i)] = 1.0 - model.cdf(w * (1.0 + t.bond_rate) / x);
    }
    return v;
}

double candidate_value(double q, double x, std::span<const double> next_grid,
                       std::span<const double> next_values, double c_next, double r,
                       const ReturnModel& model) {
    if (!(q > 0.0) || q > 1.0)
        throw validation_error("stock weight must lie in (0, 1]");
    if (!(x > 0.0)) throw validation_error("wealth must be positive");
    if (next_grid.size() != next_values.size() || next_grid.empty())
        throw validation_error("next-stage grid and values must match and be non-empty");
    return eval_candidate(q, x, next_grid, next_values, c_next, r, model);
}

GridSearchResult iterated_grid_search(double x, std::span<const double> next_grid,
                                      std::span<const double> next_values,
                                      double c_next, double r,
                                      const ReturnModel& model) {
    if (!(x > 0.0)) throw validation_error("wealth must be positive");
    if (next_grid.size() != next_values.size() || next_grid.empty())
        throw validation_error("next-stage grid and values must match and be non-empty");
    const SearchHit hit = grid_search(x, next_grid, next_values, c_next, r, model);
    return GridSearchResult{hit.q, hit.value};
}

Surface backward_induction(const CashFlowSchedule& s, const ThresholdSequence& t,
                           const ReturnModel& model, const SolverConfig& config) {
    return solve_kernel(s, t, model, {}, config);
}

Surface backward_induction_mortality(const CashFlowSchedule& s,
                                     const ThresholdSequence& t,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SolverConfig& config) {
    return solve_kernel(s, t, model, hazards.p, config);
}

}  // namespace wso
