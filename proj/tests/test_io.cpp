#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "wso/errors.hpp"
#include "wso/io.hpp"
#include "wso/policy.hpp"

using namespace wso;

namespace {
const ReturnModel kModel{1.083, 0.1753};

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("model JSON round-trips at full precision") {
    const ReturnModel m{1.0830000000000001, 0.17529999999999943};
    const auto text = io::model_to_json(m);
    const auto back = io::model_from_json_text(text);
    CHECK(back.mu == m.mu);
    CHECK(back.sigma == m.sigma);
    CHECK_THROWS_AS(io::model_from_json_text("{\"mu\": 1.0}"), format_error);
    CHECK_THROWS_AS(io::model_from_json_text("{\"mu\": 1.0, \"sigma\": -1}"),
                    format_error);
    CHECK_THROWS_AS(io::model_from_json_text("not json"), format_error);
}

TEST_CASE("schedule JSON accepts flows and both shorthands") {
    const auto raw = io::schedule_from_json_text("{\"flows\": [2.0, -1.0, -1.0]}");
    CHECK(raw.flows == std::vector<double>{2.0, -1.0, -1.0});
    const auto lump = io::schedule_from_json_text(
        "{\"lump_sum\": {\"c0\": 30, \"withdrawals\": 50}}");
    CHECK(lump.horizon() == 50);
    CHECK(lump.flows[0] == 30.0);
    const auto dca =
        io::schedule_from_json_text("{\"dca\": {\"x\": 1.89, \"k1\": 10, \"k2\": 30}}");
    CHECK(dca.horizon() == 39);
    CHECK_THROWS_AS(io::schedule_from_json_text("{\"flows\": [1.0, -1.0, 1.0]}"),
                    validation_error);
    CHECK_THROWS_AS(io::schedule_from_json_text("{}"), format_error);
}

TEST_CASE("surface JSON round-trips and drives the same policy") {
    const auto s = lump_sum_schedule(3.0, 6);
    const auto t = compute_thresholds(s, 0.0, 0.0);
    SolverConfig cfg;
    cfg.grid_resolution = 40;
    const auto surf = backward_induction(s, t, kModel, cfg);
    const auto text = io::surface_to_json(surf);
    const auto back = io::surface_from_json_text(text);
    REQUIRE(back.horizon() == surf.horizon());
    CHECK(back.M == surf.M);
    CHECK(back.v0_at_c0 == surf.v0_at_c0);
    CHECK(!back.residual_survival.has_value());
    for (int i = 0; i < surf.horizon(); ++i) {
        CHECK(back.stages[size_t(i)].grid == surf.stages[size_t(i)].grid);
        CHECK(back.stages[size_t(i)].value == surf.stages[size_t(i)].value);
        CHECK(back.stages[size_t(i)].weight == surf.stages[size_t(i)].weight);
    }
    for (double x : {0.2, 1.7, 3.3, 9.0})
        CHECK(interpolated_weight(back, 2, x) == interpolated_weight(surf, 2, x));

    CHECK_THROWS_AS(io::surface_from_json_text("{\"stages\": []}"), format_error);
}

TEST_CASE("sim results serialize with exact fields") {
    const SimResult r{0.909, 0.00091, 100000, 42};
    const auto text = io::sim_result_to_json(r);
    CHECK(text.find("\"estimate\"") != std::string::npos);
    CHECK(text.find("\"stderr\"") != std::string::npos);
    CHECK(text.find("\"n\": 100000") != std::string::npos);
    CHECK(text.find("\"seed\": 42") != std::string::npos);
}

TEST_CASE("sweep CSV rows follow the documented schema") {
    CHECK(io::sweep_csv_header() ==
          "k1,k2,start_age,confidence,x,solver_value,sim_value,sim_stderr");
    io::SweepRow row;
    row.k1 = 10;
    row.confidence = 0.95;
    row.start_age = 60;
    row.x = 1.54;
    row.solver_value = 0.9501;
    row.sim_value = 0.9507;
    row.sim_stderr = 0.0007;
    CHECK(io::sweep_csv_row(row) == "10,,60,0.95,1.54,0.9501,0.9507,0.0007");
    io::SweepRow blank;
    blank.k2 = 50;
    blank.confidence = 0.9;
    CHECK(io::sweep_csv_row(blank) == ",50,,0.9,,,,");
}

TEST_CASE("sim CSV rows append with a header once") {
    const auto path = temp_path("wso_test_append.csv");
    std::remove(path.c_str());
    io::append_sim_csv(path, "constant:1", SimResult{0.5, 0.01, 100, 1});
    io::append_sim_csv(path, "optimal:surf.json", SimResult{0.6, 0.01, 100, 2});
    const auto text = io::read_file(path);
    CHECK(text.find("label,estimate,stderr,n,seed\n") == 0);
    CHECK(text.find("constant:1,0.5,") != std::string::npos);
    CHECK(text.find("optimal:surf.json,0.6,") != std::string::npos);
    std::remove(path.c_str());
}
