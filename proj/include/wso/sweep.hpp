#pragma once

#include <optional>
#include <vector>

#include "wso/dp_solver.hpp"
#include "wso/simulator.hpp"

namespace wso {

struct SweepParams {
    double confidence = 0.95;
    double tolerance = 0.01;  // absolute, on the searched amount
    double disaster = 0.0;
    double bond_rate = 0.0;
    SolverConfig solver;
    SimConfig sim;
    // Brackets; lump-sum mode defaults to [w_0/10, 2 w_0] when unset.
    std::optional<double> bracket_lo;
    std::optional<double> bracket_hi;
};

struct SweepResult {
    double x = 0.0;            // minimal amount found
    double solver_value = 0.0; // v at the returned amount
    SimResult sim_optimal;     // interpolated-optimal-policy check
    SimResult sim_all_stock;   // constant q = 1 comparison
};

// Minimal c_0 completing k2 unit withdrawals with confidence >= C. Bisection
// on c_0; every probe is a full solve.
SweepResult min_lump_sum(int k2, const ReturnModel& model, const SweepParams& params);

// Mortality variant: withdrawals run to the hazard horizon.
SweepResult min_lump_sum(const HazardSequence& hazards, const ReturnModel& model,
                         const SweepParams& params);

// Minimal annual DCA contribution x for k1 investment years then k2
// withdrawal years. Thresholds depend on x, so each probe rebuilds them.
SweepResult min_dca_amount(int k1, int k2, const ReturnModel& model,
                           const SweepParams& params);

SweepResult min_dca_amount(int k1, const HazardSequence& hazards,
                           const ReturnModel& model, const SweepParams& params);

struct FrontierCell {
    int k2 = 0;
    double confidence = 0.0;
    std::optional<double> x;  // empty when unachievable in the bracket
    double solver_value = 0.0;
};

// Minimal lump sums over a (k2, C) grid; unachievable cells are marked, not
// fatal.
std::vector<FrontierCell> confidence_frontier(const std::vector<int>& k2s,
                                              const std::vector<double>& cs,
                                              const ReturnModel& model,
                                              const SweepParams& params);

}  // namespace wso
