// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the failure count.
//
// WSO_ACCEPT_QUICK=1 switches to the quick profile (M=100, wider band on the
// headline solve); the default profile uses M=300 throughout.

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <vector>

#include "wso/dp_solver.hpp"
#include "wso/io.hpp"
#include "wso/market_model.hpp"
#include "wso/mortality.hpp"
#include "wso/policy.hpp"
#include "wso/rng.hpp"
#include "wso/schedule.hpp"
#include "wso/simulator.hpp"
#include "wso/sweep.hpp"

using namespace wso;
namespace chr = std::chrono;

namespace {

int failures = 0;
bool quick = false;
int grid_M = 300;
constexpr std::uint64_t kSeed = 20250810;
constexpr long long kPaths = 100000;

double now_s(chr::steady_clock::time_point t0) {
    return chr::duration<double>(chr::steady_clock::now() - t0).count();
}

void report(const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
    if (!pass) ++failures;
}

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

// Range and monotonicity invariants every emitted surface must satisfy.
bool surface_invariants_ok(const Surface& s, std::string* why) {
    for (int i = 0; i < s.horizon(); ++i) {
        const auto& st = s.stages[size_t(i)];
        for (size_t j = 0; j < st.value.size(); ++j) {
            if (!(st.value[j] >= 0.0 && st.value[j] <= 1.0)) {
                *why = "value out of [0,1] at stage " + std::to_string(i);
                return false;
            }
            if (j > 0 && st.value[j] < st.value[j - 1] - 1e-9) {
                *why = "monotonicity violation at stage " + std::to_string(i);
                return false;
            }
            if (st.grid[j] >= st.w && st.value[j] != 1.0) {
                *why = "plateau not 1 at stage " + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

int surfaces_checked = 0;
bool surfaces_ok = true;
std::string surfaces_why;

void track(const Surface& s) {
    ++surfaces_checked;
    std::string why;
    if (!surface_invariants_ok(s, &why)) {
        surfaces_ok = false;
        surfaces_why = why;
    }
}

}  // namespace

int main() {
    if (const char* q = std::getenv("WSO_ACCEPT_QUICK"); q && q[0] == '1') {
        quick = true;
        grid_M = 100;
    }
    std::cout << "acceptance profile: " << (quick ? "quick (M=100)" : "full (M=300)")
              << ", N=" << kPaths << ", seed=" << kSeed << "\n";

    const std::string data_dir = WSO_TEST_DATA_DIR;
    SolverConfig solver;
    solver.grid_resolution = grid_M;
    SimConfig sim;
    sim.paths = kPaths;
    sim.seed = kSeed;

    // ------------------------------------------------------------------ 1
    ReturnModel fitted{1.083, 0.1753};
    {
        const auto t0 = chr::steady_clock::now();
        const auto records = load_price_csv(data_dir + "/market_1871_2020.csv");
        const auto returns = compute_real_returns(records);
        fitted = fit_return_model(returns);
        const double dt = now_s(t0);
        const bool pass = std::abs(fitted.mu - 1.083) <= 1e-3 &&
                          std::abs(fitted.sigma - 0.1753) <= 1e-3 && dt < 1.0;
        report("1. data pipeline fit",
               pass, "mu=" + fmt(fitted.mu) + " sigma=" + fmt(fitted.sigma) + " in " +
                         fmt(dt, 3) + " s");
    }
    const ReturnModel model{1.083, 0.1753};

    // ------------------------------------------------------------------ 2
    {
        const auto t0 = chr::steady_clock::now();
        CounterRng rng(kSeed);
        std::vector<double> draws(100000);
        for (auto& d : draws) d = draw_return(model, rng);
        const auto lm = log_moments(draws);
        const double dt = now_s(t0);
        const bool pass = std::abs(lm.mean - 0.0653) <= 3e-3 &&
                          std::abs(lm.sd - 0.168) <= 3e-3 && dt < 1.0;
        report("2. log-moment diagnostic",
               pass, "log-mean=" + fmt(lm.mean, 5) + " log-sd=" + fmt(lm.sd, 5) +
                         " in " + fmt(dt, 3) + " s");
    }

    // ------------------------------------------------------------------ 3
    {
        const auto s = lump_sum_schedule(0.5, 1);
        const auto t = compute_thresholds(s, 0.0, 0.0);
        SolverConfig cfg;
        cfg.grid_resolution = 300;
        const auto surf = backward_induction(s, t, model, cfg);
        track(surf);
        double worst = 0.0;
        for (int j = 0; j < 100; ++j) {
            const int m = 6 * j + 3;  // spread over the 600-node stage grid
            const double x = surf.stages[0].grid[size_t(m - 1)];
            const double expect = x >= 1.0 ? 1.0 : 1.0 - model.cdf(1.0 / x);
            worst = std::max(worst,
                             std::abs(surface_value_at(surf, 0, x) - expect));
        }
        report("3. k=1 closed-form oracle", worst <= 1e-12,
               "max |dp - closed form| = " + fmt(worst, 16));
    }

    // ------------------------------------------------------------------ 4
    std::shared_ptr<const Surface> headline;
    {
        const auto s = lump_sum_schedule(30.0, 50);
        const auto t = compute_thresholds(s, 0.0, 0.0);
        const auto t0 = chr::steady_clock::now();
        auto surf = backward_induction(s, t, model, solver);
        const double dt = now_s(t0);
        track(surf);
        const double lo = quick ? 0.945 : 0.950;
        const double hi = quick ? 0.970 : 0.965;
        const double v0 = surf.v0_at_c0;
        headline = std::make_shared<const Surface>(std::move(surf));
        const auto check = simulate_success(s, Policy::constant(1.0), model, sim);
        const bool pass = v0 >= lo && v0 <= hi &&
                          std::abs(check.estimate - 0.909) <= 0.010 && dt <= 600.0;
        report("4. headline lump sum 30/50",
               pass, "v0(30)=" + fmt(v0) + " in " + fmt(dt, 1) +
                         " s; all-stock sim=" + fmt(check.estimate));
    }

    // ------------------------------------------------------------------ 5
    const auto life = load_life_table(data_dir + "/life_table_female.csv");
    {
        const auto hazards = hazard_sequence(life, 60);
        const auto s = lump_sum_schedule(30.0, hazards.horizon());
        const auto t = compute_thresholds(s, 0.0, 0.0);
        const auto surf = backward_induction_mortality(s, t, model, hazards, solver);
        track(surf);
        const double v30 = surf.v0_at_c0;
        const double v20 = surface_value_at(surf, 0, 20.0);
        const auto check =
            simulate_success_mortality(s, Policy::constant(1.0), model, hazards, sim);
        const bool pass = v30 >= 0.99 - 0.003 && v20 >= 0.90 - 0.005 &&
                          std::abs(check.estimate - 0.973) <= 0.010;
        report("5. mortality headline age 60",
               pass, "vbar0(30)=" + fmt(v30) + " vbar0(20)=" + fmt(v20) +
                         " all-stock sim=" + fmt(check.estimate));
    }

    // ------------------------------------------------------------------ 6
    {
        struct Cell {
            int k1, k2;
            double x_ref, p_ref;
        };
        const Cell cells[] = {{10, 30, 1.89, 0.896},
                              {30, 50, 0.50, 0.924},
                              {20, 60, 1.03, 0.924}};
        bool pass = true;
        std::string detail;
        for (const auto& cell : cells) {
            SweepParams prm;
            prm.confidence = 0.95;
            prm.solver = solver;
            prm.sim = sim;
            const auto res = min_dca_amount(cell.k1, cell.k2, model, prm);
            const bool ok = std::abs(res.x - cell.x_ref) <= 0.05 &&
                            std::abs(res.sim_all_stock.estimate - cell.p_ref) <= 0.010;
            pass = pass && ok;
            detail += "(" + std::to_string(cell.k1) + "," + std::to_string(cell.k2) +
                      ")->x=" + fmt(res.x, 3) + "/" +
                      fmt(res.sim_all_stock.estimate, 3) + " ";
        }
        report("6. table cells, fixed horizon", pass, detail);
    }

    // ------------------------------------------------------------------ 7
    {
        struct Cell {
            int k1, age;
            double x_ref, p_ref;
        };
        const Cell cells[] = {{10, 60, 1.54, 0.938}, {20, 20, 0.95, 0.930}};
        bool pass = true;
        std::string detail;
        for (const auto& cell : cells) {
            SweepParams prm;
            prm.confidence = 0.95;
            prm.solver = solver;
            prm.sim = sim;
            const auto hazards = hazard_sequence(life, cell.age);
            const auto res = min_dca_amount(cell.k1, hazards, model, prm);
            const bool ok = std::abs(res.x - cell.x_ref) <= 0.05 &&
                            std::abs(res.sim_all_stock.estimate - cell.p_ref) <= 0.010;
            pass = pass && ok;
            detail += "(" + std::to_string(cell.k1) + ",age" +
                      std::to_string(cell.age) + ")->x=" + fmt(res.x, 3) + "/" +
                      fmt(res.sim_all_stock.estimate, 3) + " ";
        }
        report("7. table cells, mortality", pass, detail);
    }

    // ------------------------------------------------------------------ 8
    {
        CounterRng rng(kSeed + 8);
        bool pass = true;
        std::string detail;
        int made = 0;
        while (made < 5) {
            CashFlowSchedule s;
            if (rng.next_uniform() < 0.5) {
                const int k2 = 4 + int(rng.next_u64() % 17);  // 4..20
                const double rho = 0.5 + 0.4 * rng.next_uniform();
                s = lump_sum_schedule(rho * k2, k2);
            } else {
                const int k1 = 1 + int(rng.next_u64() % 5);
                const int k2 = std::max(4, 2 + int(rng.next_u64() % 15));
                if (k1 + k2 - 1 > 20) continue;
                // keep w_0 = k2 - (k1-1) x comfortably positive
                const double xmax = 0.9 * k2 / std::max(1, k1 - 1);
                const double x =
                    std::min({2.0, 0.9 * xmax, 0.3 + xmax * rng.next_uniform()});
                s = dca_schedule(x, k1, k2);
            }
            const auto t = compute_thresholds(s, 0.0, 0.0);
            const auto surf = std::make_shared<const Surface>(
                backward_induction(s, t, model, solver));
            track(*surf);
            SimConfig cfg = sim;
            cfg.seed = kSeed + 100 + std::uint64_t(made);
            const auto mc = simulate_success(s, Policy::interpolated(surf), model, cfg);
            const double gap = std::abs(surf->v0_at_c0 - mc.estimate);
            const double tol = 3.0 * mc.stderr_ + 0.005;
            pass = pass && gap <= tol;
            detail += "k=" + std::to_string(s.horizon()) + ":" + fmt(gap, 4) + " ";
            ++made;
        }
        report("8. solver vs simulation consistency", pass, "gaps " + detail);
    }

    // ------------------------------------------------------------------ 9
    {
        const auto s = lump_sum_schedule(30.0, 50);
        const auto opt = simulate_success(s, Policy::interpolated(headline), model, sim);
        bool pass = true;
        std::string detail = "optimal=" + fmt(opt.estimate, 4);
        for (double q : {0.6, 0.9, 1.0}) {
            const auto fixed = simulate_success(s, Policy::constant(q), model, sim);
            const double joint = 3.0 * std::sqrt(opt.stderr_ * opt.stderr_ +
                                                 fixed.stderr_ * fixed.stderr_);
            pass = pass && opt.estimate >= fixed.estimate - joint;
            detail += " q=" + fmt(q, 1) + ":" + fmt(fixed.estimate, 4);
        }
        report("9. policy dominance", pass, detail);
    }

    // ----------------------------------------------------------------- 10
    {
        bool pass = true;
        std::string detail;

        // zero hazards reproduce the plain solver
        const auto s = lump_sum_schedule(4.0, 8);
        const auto t = compute_thresholds(s, 0.0, 0.0);
        SolverConfig cfg;
        cfg.grid_resolution = 80;
        const auto plain = backward_induction(s, t, model, cfg);
        const auto zero = backward_induction_mortality(
            s, t, model, HazardSequence{0, std::vector<double>(8, 0.0)}, cfg);
        double worst = 0.0;
        for (int i = 0; i < 8; ++i)
            for (size_t j = 0; j < plain.stages[size_t(i)].value.size(); ++j)
                worst = std::max(worst, std::abs(plain.stages[size_t(i)].value[j] -
                                                 zero.stages[size_t(i)].value[j]));
        pass = pass && worst <= 1e-12;
        detail += "zero-hazard gap=" + fmt(worst, 15);

        // certain immediate death collapses to the indicator
        const double w = 0.6;
        const auto t2 = compute_thresholds(s, w, 0.0);
        HazardSequence h{0, std::vector<double>(8, 0.0)};
        h.p[0] = 1.0;
        const auto collapsed = backward_induction_mortality(s, t2, model, h, cfg);
        bool indicator_ok = true;
        for (size_t j = 0; j < collapsed.stages[0].grid.size(); ++j)
            if (collapsed.stages[0].value[j] !=
                (collapsed.stages[0].grid[j] >= w ? 1.0 : 0.0))
                indicator_ok = false;
        pass = pass && indicator_ok;
        detail += indicator_ok ? "; p0=1 collapse ok" : "; p0=1 collapse BROKEN";

        // non-negative schedules succeed surely
        const CashFlowSchedule all_pos{{1.0, 0.4, 0.0, 0.7}};
        const auto sure = simulate_success(all_pos, Policy::constant(1.0), model, sim);
        pass = pass && sure.estimate == 1.0;
        detail += "; all-nonneg sim=" + fmt(sure.estimate, 6);

        // every surface emitted during this run held its invariants
        pass = pass && surfaces_ok;
        detail += "; invariants on " + std::to_string(surfaces_checked) +
                  " surfaces" + (surfaces_ok ? " ok" : " FAILED: " + surfaces_why);
        report("10. degeneracy suite", pass, detail);
    }

    // ----------------------------------------------------------------- 11
    {
        const double q = 0.5, x = 1.5, c = -1.0;
        const boost::math::normal_distribution<double> dist(model.mu, model.sigma);
        auto v1_exact = [&](double y) {
            if (y >= 1.0) return 1.0;
            if (y <= 0.0) return 0.0;
            return 1.0 - boost::math::cdf(dist, 1.0 / y);
        };
        const double a = 1.0 - 1.0 / q - c / (q * x);
        const double zstar = (1.0 - c - (1.0 - q) * x) / (q * x);
        const double oracle =
            boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [&](double z) {
                    return v1_exact((q * z + (1.0 - q)) * x + c) *
                           boost::math::pdf(dist, z);
                },
                a, zstar, 12, 1e-12) +
            (1.0 - boost::math::cdf(dist, zstar));
        auto estimate = [&](int M) {
            const auto sched = lump_sum_schedule(x, 2);
            const auto th = compute_thresholds(sched, 0.0, 0.0);
            std::vector<double> grid(size_t(2 * M));
            for (int m = 1; m <= 2 * M; ++m) grid[size_t(m - 1)] = 1.0 * m / M;
            const auto v1 = terminal_stage_values(th, model, M);
            return candidate_value(q, x, grid, v1, c, 0.0, model);
        };
        const double err100 = std::abs(estimate(100) - oracle);
        const double err300 = std::abs(estimate(300) - oracle);
        const bool pass = err100 <= 8e-3 && err300 <= 2e-3 && err300 <= err100 + 1e-6;
        report("11. quadrature bias vs adaptive oracle", pass,
               "err(M=100)=" + fmt(err100, 7) + " err(M=300)=" + fmt(err300, 7));
    }

    // ------------------------------------------------ sensitivity smoke
    {
        const auto s = lump_sum_schedule(30.0, 50);
        const auto t = compute_thresholds(s, 0.0, 0.0);
        SolverConfig cfg;
        cfg.grid_resolution = 100;
        const double base = backward_induction(s, t, ReturnModel{1.083, 0.1753}, cfg).v0_at_c0;
        const double wide = backward_induction(s, t, ReturnModel{1.083, 0.1953}, cfg).v0_at_c0;
        const double tight = backward_induction(s, t, ReturnModel{1.083, 0.1553}, cfg).v0_at_c0;
        report("sensitivity smoke (sigma direction)", wide < base && base < tight,
               "v0 at sigma .1553/.1753/.1953 = " + fmt(tight, 4) + "/" +
                   fmt(base, 4) + "/" + fmt(wide, 4));
    }

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(failures) + " CRITERIA FAILED")
              << "\n";
    return failures;
}
