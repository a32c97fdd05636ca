#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wso/rng.hpp"

namespace wso {

// Per-age death rates d_0..d_119 (at least).
struct LifeTable {
    std::vector<double> death_rate;
};

inline constexpr int kMaxAge = 120;

// CSV with header `age,death_rate`, contiguous ages from 0 through >= 119.
LifeTable load_life_table(const std::string& path);

LifeTable life_table_from_rates(std::vector<double> rates);

// Stage hazards p_i = d_{s+i} for i = 0..119-s; the horizon is 120 - s.
struct HazardSequence {
    int start_age = 0;
    std::vector<double> p;

    int horizon() const { return static_cast<int>(p.size()); }
};

HazardSequence hazard_sequence(const LifeTable& table, int start_age);

// P(death in year i) = p_i * prod_{j<i}(1 - p_j); residual is the chance of
// outliving the horizon entirely.
struct DeathDistribution {
    std::vector<double> interval;
    double residual = 0.0;
};

DeathDistribution interval_death_probabilities(const HazardSequence& h);

// Sequential Bernoulli trials; returns the first success index, or p.size()
// as the survivor sentinel.
std::size_t sample_death_index(const HazardSequence& h, CounterRng& rng);

}  // namespace wso
