#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wso/market_model.hpp"
#include "wso/mortality.hpp"
#include "wso/schedule.hpp"

namespace wso {

struct SolverConfig {
    int grid_resolution = 300;  // M; each stage grid is {m*w_i/M : m=1..2M}
    int threads = 0;            // 0 = all available
};

// Value and optimal stock weight per stage grid node. Stage i covers
// (0, 2*w_i]; values are 1 on [w_i, 2*w_i] by the threshold plateau.
struct SurfaceStage {
    double w = 0.0;
    std::vector<double> grid;
    std::vector<double> value;
    std::vector<double> weight;
};

struct Surface {
    int M = 0;
    double disaster = 0.0;
    double bond_rate = 0.0;
    std::vector<SurfaceStage> stages;  // 0..k-1
    double v0_at_c0 = 0.0;
    std::optional<double> residual_survival;  // mortality runs only
    std::optional<double> lower_bound;        // v0_at_c0 - residual_survival

    int horizon() const { return static_cast<int>(stages.size()); }
};

// Piecewise-linear read of a stage's value column: 1 above the grid top,
// 0 below the bottom node, exact at nodes.
double surface_value_at(const Surface& s, int stage, double x);

// Stage k-1 closed form 1 - F(w_{k-1}(1+r)/x) on (0, w_{k-1}), 1 beyond.
std::vector<double> terminal_stage_values(const ThresholdSequence& t,
                                          const ReturnModel& model, int M);

// Grid-quadrature estimate of the continuation value for stock weight q at
// wealth x: (1 - F(a)) times the f-weighted average of next-stage values.
double candidate_value(double q, double x, std::span<const double> next_grid,
                       std::span<const double> next_values, double c_next,
                       double r, const ReturnModel& model);

struct GridSearchResult {
    double q = 0.0;
    double value = 0.0;
};

// Three-phase refinement: G1 = {.01..0.99}, then +-0.001 and -0.0009..+0.001
// around the running winner. Ties keep the incumbent.
GridSearchResult iterated_grid_search(double x, std::span<const double> next_grid,
                                      std::span<const double> next_values,
                                      double c_next, double r,
                                      const ReturnModel& model);

Surface backward_induction(const CashFlowSchedule& s, const ThresholdSequence& t,
                           const ReturnModel& model, const SolverConfig& config);

Surface backward_induction_mortality(const CashFlowSchedule& s,
                                     const ThresholdSequence& t,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SolverConfig& config);

}  // namespace wso
