#include "wso/reference.hpp"

#include <algorithm>
#include <cmath>

#include "wso/errors.hpp"

namespace wso::ref {

namespace {

std::vector<double> stage_grid(double w, int M) {
    std::vector<double> g(static_cast<std::size_t>(2 * M));
    for (int m = 1; m <= 2 * M; ++m)
        g[static_cast<std::size_t>(m - 1)] = w * (static_cast<double>(m) / M);
    return g;
}

// Full-range sum over every next-stage node; no windowing.
double candidate_plain(double q, double x, const std::vector<double>& grid,
                       const std::vector<double>& value, double c, double r,
                       const ReturnModel& model) {
    const double qx = q * x;
    const double alpha = (1.0 + r) - (1.0 + r) / q;
    const double a = alpha - c / qx;
    const double tail = 1.0 - model.cdf(a);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double z = alpha + (grid[i] - c) / qx;
        const double t = (z - model.mu) / model.sigma;
        const double g = std::exp(-0.5 * t * t);
        num += value[i] * g;
        den += g;
    }
    if (den == 0.0) return 0.0;
    return tail * (num / den);
}

struct Hit {
    double q;
    double value;
};

Hit search_plain(double x, const std::vector<double>& grid,
                 const std::vector<double>& value, double c, double r,
                 const ReturnModel& model) {
    Hit best{0.01, candidate_plain(0.01, x, grid, value, c, r, model)};
    for (int m = 2; m <= 99; ++m) {
        const double q = 0.01 * m;
        const double s = candidate_plain(q, x, grid, value, c, r, model);
        if (s > best.value) best = Hit{q, s};
    }
    const double q1 = best.q;
    for (int m = -9; m <= 9; ++m) {
        if (m == 0) continue;
        double q = q1 + 0.001 * m;
        if (q <= 0.0) continue;
        if (q > 1.0) q = 1.0;
        const double s = candidate_plain(q, x, grid, value, c, r, model);
        if (s > best.value) best = Hit{q, s};
    }
    const double q2 = best.q;
    for (int m = -9; m <= 10; ++m) {
        if (m == 0) continue;
        double q = q2 + 0.0001 * m;
        if (q <= 0.0) continue;
        if (q > 1.0) q = 1.0;
        const double s = candidate_plain(q, x, grid, value, c, r, model);
        if (s > best.value) best = Hit{q, s};
    }
    return best;
}

Surface solve_plain(const CashFlowSchedule& s, const ThresholdSequence& t,
                    const ReturnModel& model, const std::vector<double>& hazards,
                    const SolverConfig& config) {
    const int k = t.horizon();
    if (s.horizon() != k)
        throw validation_error("schedule and thresholds disagree on the horizon");
    if (!hazards.empty() && static_cast<int>(hazards.size()) != k)
        throw validation_error("hazard sequence length must equal the horizon");
    const int M = config.grid_resolution;
    if (M < 10) throw validation_error("grid resolution must be at least 10");
    const int n = 2 * M;
    const double r = t.bond_rate;

    Surface out;
    out.M = M;
    out.disaster = t.disaster;
    out.bond_rate = t.bond_rate;
    out.stages.resize(static_cast<std::size_t>(k));

    auto& last = out.stages[static_cast<std::size_t>(k - 1)];
    last.w = t.w[static_cast<std::size_t>(k - 1)];
    last.grid = stage_grid(last.w, M);
    last.value.assign(static_cast<std::size_t>(n), 1.0);
    last.weight.assign(static_cast<std::size_t>(n), 0.0);
    {
        const double p = hazards.empty() ? 0.0 : hazards[static_cast<std::size_t>(k - 1)];
        for (int i = 0; i < M - 1; ++i) {
            const double x = last.grid[static_cast<std::size_t>(i)];
            const double base = 1.0 - model.cdf(last.w * (1.0 + r) / x);
            const double vk_x = x >= t.disaster ? 1.0 : 0.0;
            last.value[static_cast<std::size_t>(i)] = (1.0 - p) * base + p * vk_x;
            last.weight[static_cast<std::size_t>(i)] = 1.0;
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

        for (int i = 0; i < M - 1; ++i) {
            const double x = st.grid[static_cast<std::size_t>(i)];
            const double vk_x = x >= t.disaster ? 1.0 : 0.0;
            const double theta = (1.0 + r) * x + c;
            double proposal;
            if (theta >= next.w) {
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
            const Hit hit = search_plain(x, next.grid, next.value, c, r, model);
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

Surface backward_induction(const CashFlowSchedule& s, const ThresholdSequence& t,
                           const ReturnModel& model, const SolverConfig& config) {
    return solve_plain(s, t, model, {}, config);
}

Surface backward_induction_mortality(const CashFlowSchedule& s,
                                     const ThresholdSequence& t,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SolverConfig& config) {
    return solve_plain(s, t, model, hazards.p, config);
}

SimResult simulate_success(const CashFlowSchedule& s, const Policy& policy,
                           const ReturnModel& model, const SimConfig& config) {
    validate_schedule(s);
    if (config.paths < 1) throw validation_error("need at least one path");
    const int k = s.horizon();
    long long successes = 0;
    for (long long path = 0; path < config.paths; ++path) {
        CounterRng rng = CounterRng::substream(config.seed,
                                               static_cast<std::uint64_t>(path), 0);
        double wealth = s.flows[0];
        for (int i = 1; i <= k; ++i) {
            const double q = policy.weight(i - 1, wealth);
            const double draw = rng.next_normal(model.mu, model.sigma);
            wealth = (q * draw + (1.0 - q) * (1.0 + config.bond_rate)) * wealth +
                     s.flows[static_cast<std::size_t>(i)];
        }
        if (wealth >= config.disaster) ++successes;
    }
    const double p = static_cast<double>(successes) / static_cast<double>(config.paths);
    return SimResult{p, std::sqrt(p * (1.0 - p) / static_cast<double>(config.paths)),
                     config.paths, config.seed};
}

SimResult simulate_success_mortality(const CashFlowSchedule& s, const Policy& policy,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SimConfig& config) {
    validate_schedule(s);
    if (config.paths < 1) throw validation_error("need at least one path");
    const int k = s.horizon();
    if (hazards.horizon() != k)
        throw validation_error("hazard sequence length must equal the horizon");
    long long successes = 0;
    for (long long path = 0; path < config.paths; ++path) {
        CounterRng returns = CounterRng::substream(config.seed,
                                                   static_cast<std::uint64_t>(path), 0);
        CounterRng death = CounterRng::substream(config.seed,
                                                 static_cast<std::uint64_t>(path), 1);
        const std::size_t death_idx = sample_death_index(hazards, death);
        double wealth = s.flows[0];
        for (int i = 1; i <= k; ++i) {
            if (static_cast<std::size_t>(i) > death_idx) break;  // frozen
            const double q = policy.weight(i - 1, wealth);
            const double draw = returns.next_normal(model.mu, model.sigma);
            wealth = (q * draw + (1.0 - q) * (1.0 + config.bond_rate)) * wealth +
                     s.flows[static_cast<std::size_t>(i)];
        }
        if (wealth >= config.disaster) ++successes;
    }
    const double p = static_cast<double>(successes) / static_cast<double>(config.paths);
    return SimResult{p, std::sqrt(p * (1.0 - p) / static_cast<double>(config.paths)),
                     config.paths, config.seed};
}

}  // namespace wso::ref
