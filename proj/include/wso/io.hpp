#pragma once

#include <string>

#include "wso/dp_solver.hpp"
#include "wso/market_model.hpp"
#include "wso/schedule.hpp"
#include "wso/simulator.hpp"
#include "wso/sweep.hpp"

// JSON/CSV serialization for the file formats the CLI speaks.
namespace wso::io {

std::string model_to_json(const ReturnModel& model);
ReturnModel model_from_json_text(const std::string& text);
ReturnModel load_model(const std::string& path);
void save_model(const ReturnModel& model, const std::string& path);

// {"flows": [...]} or {"lump_sum": {"c0":..., "withdrawals":...}} or
// {"dca": {"x":..., "k1":..., "k2":...}}
CashFlowSchedule schedule_from_json_text(const std::string& text);
CashFlowSchedule load_schedule(const std::string& path);

std::string surface_to_json(const Surface& surface);
Surface surface_from_json_text(const std::string& text);
Surface load_surface(const std::string& path);
void save_surface(const Surface& surface, const std::string& path);

std::string sim_result_to_json(const SimResult& r);
void append_sim_csv(const std::string& path, const std::string& label,
                    const SimResult& r);

// Row schema: k1,k2,start_age,confidence,x,solver_value,sim_value,sim_stderr
struct SweepRow {
    std::optional<int> k1;
    std::optional<int> k2;
    std::optional<int> start_age;
    double confidence = 0.0;
    std::optional<double> x;
    std::optional<double> solver_value;
    std::optional<double> sim_value;
    std::optional<double> sim_stderr;
};

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace wso::io
