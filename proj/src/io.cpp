#include "wso/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wso/errors.hpp"

namespace wso::io {

using nlohmann::json;

namespace {

json parse(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw format_error(what + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw format_error("cannot write " + path);
    out << text;
    if (!out) throw format_error("write failed: " + path);
}

std::string model_to_json(const ReturnModel& model) {
    json j;
    j["mu"] = model.mu;
    j["sigma"] = model.sigma;
    return j.dump(2) + "\n";
}

ReturnModel model_from_json_text(const std::string& text) {
    const json j = parse(text, "model");
    if (!j.contains("mu") || !j.contains("sigma"))
        throw format_error("model JSON needs keys mu and sigma");
    ReturnModel m{j.at("mu").get<double>(), j.at("sigma").get<double>()};
    if (!(m.mu > 0.0) || !(m.sigma > 0.0))
        throw format_error("model requires mu > 0 and sigma > 0");
    return m;
}

ReturnModel load_model(const std::string& path) {
    return model_from_json_text(read_file(path));
}

void save_model(const ReturnModel& model, const std::string& path) {
    write_file(path, model_to_json(model));
}

CashFlowSchedule schedule_from_json_text(const std::string& text) {
    const json j = parse(text, "schedule");
    CashFlowSchedule s;
    if (j.contains("flows")) {
        s.flows = j.at("flows").get<std::vector<double>>();
    } else if (j.contains("lump_sum")) {
        const auto& l = j.at("lump_sum");
        s = lump_sum_schedule(l.at("c0").get<double>(),
                              l.at("withdrawals").get<int>());
    } else if (j.contains("dca")) {
        const auto& d = j.at("dca");
        s = dca_schedule(d.at("x").get<double>(), d.at("k1").get<int>(),
                         d.at("k2").get<int>());
    } else {
        throw format_error("schedule JSON needs flows, lump_sum, or dca");
    }
    validate_schedule(s);
    return s;
}

CashFlowSchedule load_schedule(const std::string& path) {
    return schedule_from_json_text(read_file(path));
}

std::string surface_to_json(const Surface& surface) {
    json j;
    j["stages"] = json::array();
    for (int i = 0; i < surface.horizon(); ++i) {
        const auto& st = surface.stages[static_cast<std::size_t>(i)];
        json stage;
        stage["i"] = i;
        stage["w"] = st.w;
        stage["grid"] = st.grid;
        stage["v"] = st.value;
        stage["q"] = st.weight;
        j["stages"].push_back(std::move(stage));
    }
    j["v0_at_c0"] = surface.v0_at_c0;
    if (surface.residual_survival) j["residual_survival"] = *surface.residual_survival;
    if (surface.lower_bound) j["lower_bound"] = *surface.lower_bound;
    return j.dump() + "\n";
}

Surface surface_from_json_text(const std::string& text) {
    const json j = parse(text, "surface");
    Surface s;
    if (!j.contains("stages") || j.at("stages").empty())
        throw format_error("surface JSON needs a non-empty stages array");
    for (const auto& stage : j.at("stages")) {
        SurfaceStage st;
        st.w = stage.at("w").get<double>();
        st.grid = stage.at("grid").get<std::vector<double>>();
        st.value = stage.at("v").get<std::vector<double>>();
        st.weight = stage.at("q").get<std::vector<double>>();
        if (st.grid.size() != st.value.size() || st.grid.size() != st.weight.size() ||
            st.grid.empty() || st.grid.size() % 2 != 0)
            throw format_error("surface stage arrays are inconsistent");
        s.stages.push_back(std::move(st));
    }
    s.M = static_cast<int>(s.stages.front().grid.size() / 2);
    s.v0_at_c0 = j.value("v0_at_c0", 0.0);
    if (j.contains("residual_survival"))
        s.residual_survival = j.at("residual_survival").get<double>();
    if (j.contains("lower_bound")) s.lower_bound = j.at("lower_bound").get<double>();
    return s;
}

Surface load_surface(const std::string& path) {
    return surface_from_json_text(read_file(path));
}

void save_surface(const Surface& surface, const std::string& path) {
    write_file(path, surface_to_json(surface));
}

std::string sim_result_to_json(const SimResult& r) {
    json j;
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_;
    j["n"] = r.n;
    j["seed"] = r.seed;
    return j.dump(2) + "\n";
}

void append_sim_csv(const std::string& path, const std::string& label,
                    const SimResult& r) {
    const bool fresh = !std::ifstream(path).good();
    std::ofstream out(path, std::ios::app);
    if (!out) throw format_error("cannot append to " + path);
    if (fresh) out << "label,estimate,stderr,n,seed\n";
    out << label << ',' << fmt(r.estimate) << ',' << fmt(r.stderr_) << ',' << r.n
        << ',' << r.seed << '\n';
}

std::string sweep_csv_header() {
    return "k1,k2,start_age,confidence,x,solver_value,sim_value,sim_stderr";
}

std::string sweep_csv_row(const SweepRow& row) {
    std::ostringstream ss;
    auto put_int = [&](const std::optional<int>& v) {
        if (v) ss << *v;
        ss << ',';
    };
    auto put_real = [&](const std::optional<double>& v, bool last = false) {
        if (v) ss << fmt(*v);
        if (!last) ss << ',';
    };
    put_int(row.k1);
    put_int(row.k2);
    put_int(row.start_age);
    ss << fmt(row.confidence) << ',';
    put_real(row.x);
    put_real(row.solver_value);
    put_real(row.sim_value);
    put_real(row.sim_stderr, true);
    return ss.str();
}

}  // namespace wso::io
