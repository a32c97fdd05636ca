// wso: fit the return model, solve for optimal weights, simulate policies,
// and sweep for confidence-targeted contributions.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wso/dp_solver.hpp"
#include "wso/errors.hpp"
#include "wso/io.hpp"
#include "wso/market_model.hpp"
#include "wso/mortality.hpp"
#include "wso/policy.hpp"
#include "wso/schedule.hpp"
#include "wso/simulator.hpp"
#include "wso/sweep.hpp"

namespace {

constexpr const char* kVersion = "wso 0.1.0";

constexpr int kExitValidation = 2;
constexpr int kExitNotAchievable = 3;
constexpr int kExitFormat = 4;

std::string data_dir() {
    if (const char* env = std::getenv("WSO_DATA_DIR")) return env;
    return "data";
}

using Clock = std::chrono::steady_clock;

// Reproducibility record written next to every output file.
struct Manifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    Clock::time_point start = Clock::now();

    void emit(const std::string& out_path) const {
        nlohmann::json j;
        j["command"] = command;
        j["config"] = config;
        j["version"] = kVersion;
        j["wall_clock_seconds"] =
            std::chrono::duration<double>(Clock::now() - start).count();
        wso::io::write_file(out_path + ".manifest.json", j.dump(2) + "\n");
    }
};

struct ScheduleInput {
    wso::CashFlowSchedule schedule;
    double unit_scale = 1.0;  // divisor applied to flows (and w) when normalizing
};

// Raw flow lists are normalized so the final withdrawal is one unit; results
// are invariant because thresholds are linear in (w, -c).
ScheduleInput load_schedule_normalized(const std::string& path) {
    ScheduleInput in;
    in.schedule = wso::io::load_schedule(path);
    const double last = in.schedule.flows.back();
    if (last < 0.0 && last != -1.0) {
        in.unit_scale = -last;
        for (double& f : in.schedule.flows) f /= in.unit_scale;
    }
    return in;
}

struct MortalityArgs {
    std::string life_table;
    int start_age = -1;

    bool active() const { return start_age >= 0; }

    wso::HazardSequence hazards() const {
        const std::string path =
            life_table.empty() ? data_dir() + "/life_table_female.csv" : life_table;
        return wso::hazard_sequence(wso::load_life_table(path), start_age);
    }
};

wso::Policy parse_policy(const std::string& descriptor,
                         std::shared_ptr<const wso::Surface>* surface_out) {
    const auto colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw wso::validation_error(
            "policy must be optimal:<surface-file> or constant:<q>");
    const std::string kind = descriptor.substr(0, colon);
    const std::string arg = descriptor.substr(colon + 1);
    if (kind == "constant") {
        char* end = nullptr;
        const double q = std::strtod(arg.c_str(), &end);
        if (end == arg.c_str() || *end != '\0')
            throw wso::validation_error("constant policy needs a numeric weight");
        return wso::Policy::constant(q);
    }
    if (kind == "optimal") {
        auto surface =
            std::make_shared<const wso::Surface>(wso::io::load_surface(arg));
        if (surface_out) *surface_out = surface;
        return wso::Policy::interpolated(surface);
    }
    throw wso::validation_error("unknown policy kind '" + kind + "'");
}

std::vector<double> parse_confidences(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? csv.npos : comma - pos);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int cmd_fit(const std::string& data_path, const std::string& out_path) {
    Manifest manifest;
    manifest.command = "fit";
    const std::string path =
        data_path.empty() ? data_dir() + "/market_1871_2020.csv" : data_path;
    manifest.config["data"] = path;

    const auto records = wso::load_price_csv(path);
    const auto returns = wso::compute_real_returns(records);
    const auto model = wso::fit_return_model(returns);
    const auto logs = wso::log_moments(returns);
    std::cout << "records: " << records.size() << " (" << records.front().year << "-"
              << records.back().year << "), returns: " << returns.size() << "\n";
    std::cout << "sample moments:     mu = " << model.mu << "  sigma = " << model.sigma
              << "\n";
    std::cout << "log-return moments: mean = " << logs.mean << "  sd = " << logs.sd
              << "\n";
    if (!out_path.empty()) {
        wso::io::save_model(model, out_path);
        manifest.emit(out_path);
        std::cout << "model written to " << out_path << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& schedule_path, const std::string& model_path,
              int M, double w, double r, const MortalityArgs& mort, int threads,
              const std::string& out_path) {
    Manifest manifest;
    manifest.command = "solve";
    manifest.config = {{"schedule", schedule_path}, {"model", model_path},
                       {"M", M},                    {"w", w},
                       {"r", r},                    {"threads", threads}};

    auto input = load_schedule_normalized(schedule_path);
    const double disaster = w / input.unit_scale;
    manifest.config["unit_scale"] = input.unit_scale;
    const auto model = wso::io::load_model(model_path);
    wso::SolverConfig config;
    config.grid_resolution = M;
    config.threads = threads;

    wso::Surface surface;
    if (mort.active()) {
        manifest.config["life_table"] = mort.life_table;
        manifest.config["start_age"] = mort.start_age;
        const auto hazards = mort.hazards();
        input.schedule = wso::extended_to_horizon(input.schedule, hazards.horizon());
        const auto thresholds =
            wso::compute_thresholds(input.schedule, disaster, r);
        surface = wso::backward_induction_mortality(input.schedule, thresholds,
                                                    model, hazards, config);
    } else {
        const auto thresholds =
            wso::compute_thresholds(input.schedule, disaster, r);
        surface = wso::backward_induction(input.schedule, thresholds, model, config);
    }

    std::cout << "v0(c0 = " << input.schedule.flows[0] << ") = " << surface.v0_at_c0
              << "\n";
    if (surface.residual_survival) {
        std::cout << "residual survival past horizon = " << *surface.residual_survival
                  << "\nlifetime lower bound = " << *surface.lower_bound << "\n";
    }
    if (!out_path.empty()) {
        wso::io::save_surface(surface, out_path);
        manifest.emit(out_path);
        std::cout << "surface written to " << out_path << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& schedule_path, const std::string& model_path,
                 const std::string& policy_desc, long long paths,
                 std::uint64_t seed, double w, double r, const MortalityArgs& mort,
                 int threads, const std::string& out_path,
                 const std::string& csv_path) {
    Manifest manifest;
    manifest.command = "simulate";
    manifest.config = {{"schedule", schedule_path}, {"model", model_path},
                       {"policy", policy_desc},     {"N", paths},
                       {"seed", seed},              {"w", w},
                       {"r", r},                    {"threads", threads}};

    auto input = load_schedule_normalized(schedule_path);
    const auto model = wso::io::load_model(model_path);
    std::shared_ptr<const wso::Surface> surface;
    const wso::Policy policy = parse_policy(policy_desc, &surface);

    wso::SimConfig config;
    config.paths = paths;
    config.seed = seed;
    config.disaster = w / input.unit_scale;
    config.bond_rate = r;
    config.threads = threads;
    manifest.config["unit_scale"] = input.unit_scale;

    wso::SimResult result;
    if (mort.active()) {
        manifest.config["life_table"] = mort.life_table;
        manifest.config["start_age"] = mort.start_age;
        const auto hazards = mort.hazards();
        input.schedule = wso::extended_to_horizon(input.schedule, hazards.horizon());
        if (surface && surface->horizon() != input.schedule.horizon())
            throw wso::validation_error(
                "surface horizon does not match the mortality horizon");
        result = wso::simulate_success_mortality(input.schedule, policy, model,
                                                 hazards, config);
    } else {
        if (surface && surface->horizon() != input.schedule.horizon())
            throw wso::validation_error(
                "surface horizon does not match the schedule horizon");
        result = wso::simulate_success(input.schedule, policy, model, config);
    }

    std::cout << wso::io::sim_result_to_json(result);
    if (!out_path.empty()) {
        wso::io::write_file(out_path, wso::io::sim_result_to_json(result));
        manifest.emit(out_path);
    }
    if (!csv_path.empty()) wso::io::append_sim_csv(csv_path, policy_desc, result);
    return 0;
}

int cmd_sweep(const std::string& mode, const std::string& confidences_csv,
              const std::string& model_path, const std::vector<int>& k1s,
              const std::vector<int>& k2s, const std::vector<int>& ages,
              const std::string& life_table, int M, long long paths,
              std::uint64_t seed, double w, double r, int threads,
              const std::string& out_path) {
    Manifest manifest;
    manifest.command = "sweep";
    manifest.config = {{"mode", mode},   {"confidence", confidences_csv},
                       {"model", model_path}, {"M", M},
                       {"N", paths},     {"seed", seed},
                       {"w", w},         {"r", r},
                       {"threads", threads}};

    const auto model = wso::io::load_model(model_path);
    const auto confidences = parse_confidences(confidences_csv);

    wso::SweepParams params;
    params.disaster = w;
    params.bond_rate = r;
    params.solver.grid_resolution = M;
    params.solver.threads = threads;
    params.sim.paths = paths;
    params.sim.seed = seed;
    params.sim.threads = threads;

    const bool mortality = mode == "lump-mortality" || mode == "dca-mortality";
    wso::LifeTable table;
    if (mortality) {
        const std::string path =
            life_table.empty() ? data_dir() + "/life_table_female.csv" : life_table;
        table = wso::load_life_table(path);
        manifest.config["life_table"] = path;
    }

    std::vector<std::string> rows;
    auto run_cell = [&](std::optional<int> k1, std::optional<int> k2,
                        std::optional<int> age, double C) {
        params.confidence = C;
        wso::io::SweepRow row;
        row.k1 = k1;
        row.k2 = k2;
        row.start_age = age;
        row.confidence = C;
        try {
            wso::SweepResult res;
            if (mode == "lump") {
                res = wso::min_lump_sum(*k2, model, params);
            } else if (mode == "dca") {
                res = wso::min_dca_amount(*k1, *k2, model, params);
            } else if (mode == "lump-mortality") {
                res = wso::min_lump_sum(wso::hazard_sequence(table, *age), model,
                                        params);
            } else {
                res = wso::min_dca_amount(*k1, wso::hazard_sequence(table, *age),
                                          model, params);
            }
            row.x = res.x;
            row.solver_value = res.solver_value;
            row.sim_value = res.sim_optimal.estimate;
            row.sim_stderr = res.sim_optimal.stderr_;
            std::cout << wso::io::sweep_csv_row(row)
                      << "  all_stock=" << res.sim_all_stock.estimate << "\n";
        } catch (const wso::not_achievable_error& e) {
            row.solver_value = e.value_at_top();
            std::cout << wso::io::sweep_csv_row(row) << "  (not achievable)\n";
        }
        rows.push_back(wso::io::sweep_csv_row(row));
    };

    for (double C : confidences) {
        if (mode == "lump") {
            for (int k2 : k2s) run_cell(std::nullopt, k2, std::nullopt, C);
        } else if (mode == "dca") {
            for (int k1 : k1s)
                for (int k2 : k2s) run_cell(k1, k2, std::nullopt, C);
        } else if (mode == "lump-mortality") {
            for (int age : ages) run_cell(std::nullopt, std::nullopt, age, C);
        } else if (mode == "dca-mortality") {
            for (int k1 : k1s)
                for (int age : ages) run_cell(k1, std::nullopt, age, C);
        } else {
            throw wso::validation_error("unknown sweep mode '" + mode + "'");
        }
    }

    std::string text = wso::io::sweep_csv_header() + "\n";
    for (const auto& rw : rows) text += rw + "\n";
    if (!out_path.empty()) {
        wso::io::write_file(out_path, text);
        manifest.emit(out_path);
        std::cout << rows.size() << " rows written to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"withdrawal-success optimizer: fit, solve, simulate, sweep"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string data_path, model_out;
    auto* fit = app.add_subcommand("fit", "fit the annual return model from CSV data");
    fit->add_option("--data", data_path, "CSV with year,index,dividend,cpi");
    fit->add_option("--out", model_out, "output model JSON");

    std::string schedule_path, model_path, out_path;
    int M = 300;
    double w = 0.0, r = 0.0;
    int threads = 0;
    MortalityArgs mort;
    auto* solve = app.add_subcommand("solve", "compute optimal weights by backward induction");
    solve->add_option("--schedule", schedule_path, "schedule JSON")->required();
    solve->add_option("--model", model_path, "model JSON")->required();
    solve->add_option("--M", M, "wealth grid resolution");
    solve->add_option("--w", w, "disaster level");
    solve->add_option("--r", r, "bond rate");
    solve->add_option("--life-table", mort.life_table, "life table CSV (mortality mode)");
    solve->add_option("--start-age", mort.start_age, "starting age (mortality mode)");
    solve->add_option("--threads", threads, "worker cap (0 = all)");
    solve->add_option("--out", out_path, "output surface JSON");

    std::string policy_desc, sim_out, sim_csv;
    long long paths = 100000;
    std::uint64_t seed = 1;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo success probability");
    sim->add_option("--schedule", schedule_path, "schedule JSON")->required();
    sim->add_option("--model", model_path, "model JSON")->required();
    sim->add_option("--policy", policy_desc, "optimal:<surface.json> or constant:<q>")
        ->required();
    sim->add_option("--N", paths, "path count");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--w", w, "disaster level");
    sim->add_option("--r", r, "bond rate");
    sim->add_option("--life-table", mort.life_table, "life table CSV (mortality mode)");
    sim->add_option("--start-age", mort.start_age, "starting age (mortality mode)");
    sim->add_option("--threads", threads, "worker cap (0 = all)");
    sim->add_option("--out", sim_out, "output result JSON");
    sim->add_option("--csv", sim_csv, "append a CSV row here");

    std::string mode, confidences = "0.95", life_table_path;
    std::vector<int> k1s, k2s, ages;
    auto* sweep = app.add_subcommand("sweep", "confidence-targeted minimum contributions");
    sweep->add_option("--mode", mode, "lump | dca | lump-mortality | dca-mortality")
        ->required();
    sweep->add_option("--confidence", confidences, "target confidence list, e.g. 0.9,0.95");
    sweep->add_option("--model", model_path, "model JSON")->required();
    sweep->add_option("--k1", k1s, "DCA years")->delimiter(',');
    sweep->add_option("--k2", k2s, "withdrawal years")->delimiter(',');
    sweep->add_option("--start-age", ages, "starting ages (mortality modes)")
        ->delimiter(',');
    sweep->add_option("--life-table", life_table_path, "life table CSV");
    sweep->add_option("--M", M, "wealth grid resolution");
    sweep->add_option("--N", paths, "simulation path count");
    sweep->add_option("--seed", seed, "master seed");
    sweep->add_option("--w", w, "disaster level");
    sweep->add_option("--r", r, "bond rate");
    sweep->add_option("--threads", threads, "worker cap (0 = all)");
    sweep->add_option("--out", out_path, "output CSV");

    try {
        app.parse(argc, argv);
        if (fit->parsed()) return cmd_fit(data_path, model_out);
        if (solve->parsed())
            return cmd_solve(schedule_path, model_path, M, w, r, mort, threads,
                             out_path);
        if (sim->parsed())
            return cmd_simulate(schedule_path, model_path, policy_desc, paths, seed,
                                w, r, mort, threads, sim_out, sim_csv);
        if (sweep->parsed())
            return cmd_sweep(mode, confidences, model_path, k1s, k2s, ages,
                             life_table_path, M, paths, seed, w, r, threads,
                             out_path);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    } catch (const wso::not_achievable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotAchievable;
    } catch (const wso::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const wso::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const wso::insufficient_data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const wso::degenerate_distribution_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    }
}
