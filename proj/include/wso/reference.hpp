#pragma once

#include "wso/dp_solver.hpp"
#include "wso/simulator.hpp"

// Plain serial implementations of the solver and simulator. They share no
// loop structure with the OpenMP kernels (full-range sums, no node windowing,
// one path at a time) and must produce bit-identical results; tests compare
// the two and the bench tool times them.
namespace wso::ref {

Surface backward_induction(const CashFlowSchedule& s, const ThresholdSequence& t,
                           const ReturnModel& model, const SolverConfig& config);

Surface backward_induction_mortality(const CashFlowSchedule& s,
                                     const ThresholdSequence& t,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SolverConfig& config);

SimResult simulate_success(const CashFlowSchedule& s, const Policy& policy,
                           const ReturnModel& model, const SimConfig& config);

SimResult simulate_success_mortality(const CashFlowSchedule& s, const Policy& policy,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SimConfig& config);

}  // namespace wso::ref
