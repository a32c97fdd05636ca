#include "wso/mortality.hpp"

#include <fstream>
#include <sstream>

#include "wso/errors.hpp"

namespace wso {

LifeTable life_table_from_rates(std::vector<double> rates) {
    if (static_cast<int>(rates.size()) < kMaxAge)
        throw format_error("life table must cover ages 0 through " +
                           std::to_string(kMaxAge - 1) + ", got " +
                           std::to_string(rates.size()) + " ages");
    for (std::size_t age = 0; age < rates.size(); ++age) {
        const double d = rates[age];
        if (!(d >= 0.0) || d > 1.0)
            throw format_error("death rate at age " + std::to_string(age) +
                               " outside [0,1]");
    }
    return LifeTable{std::move(rates)};
}

LifeTable load_life_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw format_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "age,death_rate")
        throw format_error(path + ": expected header age,death_rate, got '" + line +
                           "'");
    std::vector<double> rates;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        int age;
        double rate;
        char comma;
        if (!(ss >> age >> comma >> rate) || comma != ',' || !(ss >> std::ws).eof())
            throw format_error(path + ":" + std::to_string(lineno) +
                               ": malformed row '" + line + "'");
        if (age != static_cast<int>(rates.size()))
            throw format_error(path + ":" + std::to_string(lineno) +
                               ": ages must be contiguous from 0, got " +
                               std::to_string(age));
        rates.push_back(rate);
    }
    return life_table_from_rates(std::move(rates));
}

HazardSequence hazard_sequence(const LifeTable& table, int start_age) {
    if (start_age < 0 || start_age >= kMaxAge)
        throw validation_error("start age must lie in [0, " +
                               std::to_string(kMaxAge - 1) + "]");
    HazardSequence h;
    h.start_age = start_age;
    h.p.reserve(static_cast<std::size_t>(kMaxAge - start_age));
    for (int age = start_age; age < kMaxAge; ++age)
        h.p.push_back(table.death_rate[static_cast<std::size_t>(age)]);
    return h;
}

DeathDistribution interval_death_probabilities(const HazardSequence& h) {
    DeathDistribution d;
    d.interval.reserve(h.p.size());
    double survival = 1.0;
    for (double p : h.p) {
        d.interval.push_back(p * survival);
        survival *= 1.0 - p;
    }
    d.residual = survival;
    return d;
}

std::size_t sample_death_index(const HazardSequence& h, CounterRng& rng) {
    for (std::size_t i = 0; i < h.p.size(); ++i)
        if (rng.next_bernoulli(h.p[i])) return i;
    return h.p.size();
}

}  // namespace wso
