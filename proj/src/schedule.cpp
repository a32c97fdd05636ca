#include "wso/schedule.hpp"

#include "wso/errors.hpp"

namespace wso {

CashFlowSchedule lump_sum_schedule(double c0, int withdrawals) {
    if (!(c0 > 0.0)) throw validation_error("initial investment must be positive");
    if (withdrawals < 1) throw validation_error("need at least one withdrawal");
    std::vector<double> flows(static_cast<std::size_t>(withdrawals) + 1, -1.0);
    flows[0] = c0;
    return CashFlowSchedule{std::move(flows)};
}

CashFlowSchedule dca_schedule(double x, int k1, int k2) {
    if (!(x > 0.0)) throw validation_error("DCA contribution must be positive");
    if (k1 < 1 || k2 < 1)
        throw validation_error("need at least one investment and one withdrawal year");
    std::vector<double> flows;
    flows.reserve(static_cast<std::size_t>(k1 + k2));
    flows.insert(flows.end(), k1, x);
    flows.insert(flows.end(), k2, -1.0);
    return CashFlowSchedule{std::move(flows)};
}

std::optional<ScheduleViolation> find_violation(const CashFlowSchedule& s) {
    if (s.flows.empty()) return ScheduleViolation{0, "schedule is empty"};
    if (!(s.flows[0] > 0.0)) return ScheduleViolation{0, "c_0 must be positive"};
    bool negative_seen = false;
    for (int i = 1; i < static_cast<int>(s.flows.size()); ++i) {
        if (negative_seen && s.flows[i] >= 0.0)
            return ScheduleViolation{
                i, "sign propagation: a non-negative flow follows a withdrawal"};
        if (s.flows[i] < 0.0) negative_seen = true;
    }
    return std::nullopt;
}

void validate_schedule(const CashFlowSchedule& s) {
    if (auto v = find_violation(s))
        throw validation_error("invalid schedule at index " +
                               std::to_string(v->index) + ": " + v->reason);
}

CashFlowSchedule extended_to_horizon(const CashFlowSchedule& s, int k) {
    if (k < 1) throw validation_error("horizon must be at least 1");
    CashFlowSchedule out = s;
    out.flows.resize(static_cast<std::size_t>(k) + 1, -1.0);
    validate_schedule(out);
    return out;
}

ThresholdSequence compute_thresholds(const CashFlowSchedule& s, double disaster,
                                     double bond_rate) {
    validate_schedule(s);
    if (bond_rate < 0.0) throw validation_error("bond rate must be non-negative");
    const int k = s.horizon();
    if (k < 1) throw validation_error("schedule needs at least one step");
    ThresholdSequence t;
    t.disaster = disaster;
    t.bond_rate = bond_rate;
    t.w.assign(static_cast<std::size_t>(k) + 1, 0.0);
    t.w[k] = disaster;
    for (int i = k - 1; i >= 0; --i)
        t.w[i] = (t.w[i + 1] - s.flows[i + 1]) / (1.0 + bond_rate);
    for (int i = 0; i < k; ++i) {
        if (!(t.w[i] > 0.0))
            throw trivially_satisfiable_error(
                i, "w_" + std::to_string(i) +
                       " <= 0: the bond alone completes the remaining schedule "
                       "with probability 1");
    }
    return t;
}

}  // namespace wso
