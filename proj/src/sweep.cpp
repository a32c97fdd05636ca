#include "wso/sweep.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "wso/errors.hpp"

namespace wso {

namespace {

struct Probe {
    double value = 0.0;
    std::shared_ptr<Surface> surface;  // null when trivially satisfiable
};

// One full solve per candidate amount. A trivially satisfiable candidate
// counts as value 1: the bond alone already completes the schedule there.
template <typename MakeSchedule, typename Solve>
Probe probe(double x, const MakeSchedule& make, const Solve& solve) {
    try {
        CashFlowSchedule s = make(x);
        auto surface = std::make_shared<Surface>(solve(s));
        return Probe{surface->v0_at_c0, std::move(surface)};
    } catch (const trivially_satisfiable_error&) {
        return Probe{1.0, nullptr};
    }
}

template <typename MakeSchedule, typename Solve, typename Simulate>
SweepResult bisect_min_amount(double lo, double hi, const SweepParams& params,
                              const MakeSchedule& make, const Solve& solve,
                              const Simulate& simulate) {
    const double C = params.confidence;
    if (!(C > 0.0) || !(C < 1.0))
        throw validation_error("confidence must lie in (0, 1)");
    if (!(lo > 0.0) || !(hi > lo)) throw validation_error("bad search bracket");

    Probe top = probe(hi, make, solve);
    if (top.value < C)
        throw not_achievable_error(top.value,
                                   "confidence not achievable within bracket; value "
                                   "at bracket top is " + std::to_string(top.value));
    Probe bottom = probe(lo, make, solve);

    double best_x = hi;
    Probe best = std::move(top);
    if (bottom.value >= C) {
        best_x = lo;
        best = std::move(bottom);
    } else {
        while (hi - lo > params.tolerance) {
            const double mid = 0.5 * (lo + hi);
            Probe p = probe(mid, make, solve);
            if (p.value >= C) {
                hi = mid;
                best_x = mid;
                best = std::move(p);
            } else {
                lo = mid;
            }
        }
    }

    SweepResult out;
    out.x = best_x;
    out.solver_value = best.value;
    CashFlowSchedule s = make(best_x);
    const Policy optimal = best.surface
                               ? Policy::interpolated(best.surface)
                               : Policy::constant(0.0);
    out.sim_optimal = simulate(s, optimal);
    out.sim_all_stock = simulate(s, Policy::constant(1.0));
    return out;
}

SimConfig sim_config(const SweepParams& params) {
    SimConfig cfg = params.sim;
    cfg.disaster = params.disaster;
    cfg.bond_rate = params.bond_rate;
    return cfg;
}

}  // namespace

SweepResult min_lump_sum(int k2, const ReturnModel& model, const SweepParams& params) {
    if (k2 < 1) throw validation_error("need at least one withdrawal year");
    const auto probe_thresholds =
        compute_thresholds(lump_sum_schedule(1.0, k2), params.disaster, params.bond_rate);
    const double w0 = probe_thresholds.w[0];
    const double lo = params.bracket_lo.value_or(w0 / 10.0);
    const double hi = params.bracket_hi.value_or(2.0 * w0);
    const SimConfig sim = sim_config(params);
    return bisect_min_amount(
        lo, hi, params, [&](double c0) { return lump_sum_schedule(c0, k2); },
        [&](const CashFlowSchedule& s) {
            return backward_induction(
                s, compute_thresholds(s, params.disaster, params.bond_rate), model,
                params.solver);
        },
        [&](const CashFlowSchedule& s, const Policy& p) {
            return simulate_success(s, p, model, sim);
        });
}

SweepResult min_lump_sum(const HazardSequence& hazards, const ReturnModel& model,
                         const SweepParams& params) {
    const int k = hazards.horizon();
    if (k < 1) throw validation_error("empty hazard sequence");
    const auto probe_thresholds =
        compute_thresholds(lump_sum_schedule(1.0, k), params.disaster, params.bond_rate);
    const double w0 = probe_thresholds.w[0];
    const double lo = params.bracket_lo.value_or(w0 / 10.0);
    const double hi = params.bracket_hi.value_or(2.0 * w0);
    const SimConfig sim = sim_config(params);
    return bisect_min_amount(
        lo, hi, params, [&](double c0) { return lump_sum_schedule(c0, k); },
        [&](const CashFlowSchedule& s) {
            return backward_induction_mortality(
                s, compute_thresholds(s, params.disaster, params.bond_rate), model,
                hazards, params.solver);
        },
        [&](const CashFlowSchedule& s, const Policy& p) {
            return simulate_success_mortality(s, p, model, hazards, sim);
        });
}

SweepResult min_dca_amount(int k1, int k2, const ReturnModel& model,
                           const SweepParams& params) {
    if (k1 < 1 || k2 < 1)
        throw validation_error("need at least one investment and one withdrawal year");
    const double lo = params.bracket_lo.value_or(0.01);
    const double hi = params.bracket_hi.value_or(5.0);
    const SimConfig sim = sim_config(params);
    return bisect_min_amount(
        lo, hi, params, [&](double x) { return dca_schedule(x, k1, k2); },
        [&](const CashFlowSchedule& s) {
            return backward_induction(
                s, compute_thresholds(s, params.disaster, params.bond_rate), model,
                params.solver);
        },
        [&](const CashFlowSchedule& s, const Policy& p) {
            return simulate_success(s, p, model, sim);
        });
}

SweepResult min_dca_amount(int k1, const HazardSequence& hazards,
                           const ReturnModel& model, const SweepParams& params) {
    const int k = hazards.horizon();
    if (k1 < 1) throw validation_error("need at least one investment year");
    if (k1 > k)
        throw validation_error("DCA years exceed the mortality horizon");
    const double lo = params.bracket_lo.value_or(0.01);
    const double hi = params.bracket_hi.value_or(5.0);
    const SimConfig sim = sim_config(params);
    const auto make = [&](double x) {
        return extended_to_horizon(dca_schedule(x, k1, 1), k);
    };
    return bisect_min_amount(
        lo, hi, params, make,
        [&](const CashFlowSchedule& s) {
            return backward_induction_mortality(
                s, compute_thresholds(s, params.disaster, params.bond_rate), model,
                hazards, params.solver);
        },
        [&](const CashFlowSchedule& s, const Policy& p) {
            return simulate_success_mortality(s, p, model, hazards, sim);
        });
}

std::vector<FrontierCell> confidence_frontier(const std::vector<int>& k2s,
                                              const std::vector<double>& cs,
                                              const ReturnModel& model,
                                              const SweepParams& params) {
    std::vector<FrontierCell> cells;
    cells.reserve(k2s.size() * cs.size());
    for (int k2 : k2s) {
        for (double c : cs) {
            SweepParams cell_params = params;
            cell_params.confidence = c;
            FrontierCell cell;
            cell.k2 = k2;
            cell.confidence = c;
            try {
                const SweepResult r = min_lump_sum(k2, model, cell_params);
                cell.x = r.x;
                cell.solver_value = r.solver_value;
            } catch (const not_achievable_error& e) {
                cell.x = std::nullopt;
                cell.solver_value = e.value_at_top();
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace wso
