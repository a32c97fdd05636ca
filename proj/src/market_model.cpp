#include "wso/market_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wso/errors.hpp"

namespace wso {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;
}  // namespace

double ReturnModel::pdf(double x) const {
    const double t = (x - mu) / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * t * t);
}

double ReturnModel::cdf(double x) const {
    return 0.5 * std::erfc((mu - x) / (sigma * kSqrt2));
}

void validate_records(std::span<const PriceRecord> records) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (!(rec.index_level > 0.0))
            throw format_error("index level must be positive (year " +
                               std::to_string(rec.year) + ")");
        if (!(rec.cpi > 0.0))
            throw format_error("cpi must be positive (year " +
                               std::to_string(rec.year) + ")");
        if (rec.dividend < 0.0)
            throw format_error("dividend must be non-negative (year " +
                               std::to_string(rec.year) + ")");
        if (i > 0 && rec.year != records[i - 1].year + 1)
            throw format_error("years must be contiguous: " +
                               std::to_string(records[i - 1].year) + " -> " +
                               std::to_string(rec.year));
    }
}

std::vector<double> compute_real_returns(std::span<const PriceRecord> records) {
    if (records.size() < 2)
        throw insufficient_data_error("need at least 2 annual records, got " +
                                      std::to_string(records.size()));
    validate_records(records);
    std::vector<double> out;
    out.reserve(records.size() - 1);
    for (std::size_t k = 0; k + 1 < records.size(); ++k) {
        const auto& a = records[k];
        const auto& b = records[k + 1];
        out.push_back((b.index_level + a.dividend) / a.index_level *
                      (a.cpi / b.cpi));
    }
    return out;
}

ReturnModel fit_return_model(std::span<const double> returns) {
    if (returns.size() < 2)
        throw insufficient_data_error("need at least 2 returns to fit");
    double mean = 0.0;
    for (double r : returns) mean += r;
    mean /= static_cast<double>(returns.size());
    double ss = 0.0;
    for (double r : returns) ss += (r - mean) * (r - mean);
    const double var = ss / static_cast<double>(returns.size() - 1);
    if (var == 0.0)
        throw degenerate_distribution_error(
            "all returns identical; fitted sigma would be 0");
    return ReturnModel{mean, std::sqrt(var)};
}

LogMoments log_moments(std::span<const double> xs) {
    std::vector<double> logs;
    logs.reserve(xs.size());
    for (double x : xs)
        if (x > 0.0) logs.push_back(std::log(x));
    if (logs.size() < 2)
        throw insufficient_data_error("need at least 2 positive values");
    double mean = 0.0;
    for (double v : logs) mean += v;
    mean /= static_cast<double>(logs.size());
    double ss = 0.0;
    for (double v : logs) ss += (v - mean) * (v - mean);
    return LogMoments{mean, std::sqrt(ss / static_cast<double>(logs.size() - 1))};
}

double draw_return(const ReturnModel& model, CounterRng& rng) {
    return rng.next_normal(model.mu, model.sigma);
}

std::vector<PriceRecord> load_price_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw format_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "year,index,dividend,cpi")
        throw format_error(path + ": expected header year,index,dividend,cpi, got '" +
                           line + "'");
    std::vector<PriceRecord> records;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        PriceRecord rec;
        char c1, c2, c3;
        if (!(ss >> rec.year >> c1 >> rec.index_level >> c2 >> rec.dividend >> c3 >>
              rec.cpi) ||
            c1 != ',' || c2 != ',' || c3 != ',' || !(ss >> std::ws).eof())
            throw format_error(path + ":" + std::to_string(lineno) +
                               ": malformed row '" + line + "'");
        records.push_back(rec);
    }
    if (records.size() < 2)
        throw insufficient_data_error(path + ": fewer than 2 data rows");
    validate_records(records);
    return records;
}

}  // namespace wso
