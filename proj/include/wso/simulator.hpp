#pragma once

#include <cstdint>
#include <vector>

#include "wso/market_model.hpp"
#include "wso/mortality.hpp"
#include "wso/policy.hpp"
#include "wso/schedule.hpp"

namespace wso {

struct SimConfig {
    long long paths = 100000;
    std::uint64_t seed = 1;
    double disaster = 0.0;
    double bond_rate = 0.0;
    int threads = 0;  // 0 = all available
};

struct SimResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    long long n = 0;
    std::uint64_t seed = 0;
};

// Wealth recursion W <- (q X + (1-q)(1+r)) W + c_i along N independent paths;
// estimate of P(W_k >= w). Identical results for a given (seed, N) regardless
// of thread count: each path owns a counter-based substream.
SimResult simulate_success(const CashFlowSchedule& s, const Policy& policy,
                           const ReturnModel& model, const SimConfig& config);

// Same recursion with wealth frozen from the sampled death interval onward.
// Death draws come from a separate substream, so zero hazards reproduce
// simulate_success bit for bit.
SimResult simulate_success_mortality(const CashFlowSchedule& s, const Policy& policy,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SimConfig& config);

// Total-probability decomposition: per-horizon success estimates from shared
// paths, combined with the interval death probabilities.
struct IntervalDecomposition {
    std::vector<double> horizon_success;  // P(W_i >= w), i = 0..k
    DeathDistribution death;
    double total = 0.0;
    double stderr_ = 0.0;
    long long n = 0;
    std::uint64_t seed = 0;
};

IntervalDecomposition success_by_interval(const CashFlowSchedule& s,
                                          const Policy& policy,
                                          const ReturnModel& model,
                                          const HazardSequence& hazards,
                                          const SimConfig& config);

}  // namespace wso
