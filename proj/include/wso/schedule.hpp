#pragma once

#include <optional>
#include <string>
#include <vector>

namespace wso {

// Cash flows c_0..c_k. Positive entries are investments, negative entries are
// withdrawals. Valid schedules have c_0 > 0 and, once a flow turns negative,
// every later flow stays negative.
struct CashFlowSchedule {
    std::vector<double> flows;

    int horizon() const { return static_cast<int>(flows.size()) - 1; }
};

struct ScheduleViolation {
    int index = 0;
    std::string reason;
};

CashFlowSchedule lump_sum_schedule(double c0, int withdrawals);

// k1 investments of x followed by k2 unit withdrawals; horizon k1 + k2 - 1.
CashFlowSchedule dca_schedule(double x, int k1, int k2);

// First index breaking c_0 > 0 or sign propagation, if any.
std::optional<ScheduleViolation> find_violation(const CashFlowSchedule& s);

// Throws validation_error when find_violation reports something.
void validate_schedule(const CashFlowSchedule& s);

// Pad with unit withdrawals (or truncate) so the horizon becomes k.
CashFlowSchedule extended_to_horizon(const CashFlowSchedule& s, int k);

// Success thresholds w_0..w_k: w_k = disaster level, and walking backwards
// w_i = (w_{i+1} - c_{i+1}) / (1 + r). Wealth at or above w_i lets the bond
// alone finish the schedule.
struct ThresholdSequence {
    std::vector<double> w;
    double disaster = 0.0;
    double bond_rate = 0.0;

    int horizon() const { return static_cast<int>(w.size()) - 1; }
};

// Throws trivially_satisfiable_error when some w_i <= 0 before the horizon.
ThresholdSequence compute_thresholds(const CashFlowSchedule& s, double disaster,
                                     double bond_rate);

}  // namespace wso
