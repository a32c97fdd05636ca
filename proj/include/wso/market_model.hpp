#pragma once

#include <span>
#include <string>
#include <vector>

#include "wso/rng.hpp"

namespace wso {

// One row of the annual dataset: average monthly close, per-share dividend,
// and January CPI for a calendar year.
struct PriceRecord {
    int year = 0;
    double index_level = 0.0;
    double dividend = 0.0;
    double cpi = 0.0;
};

// Gross annual real return fitted as Normal(mu, sigma^2).
struct ReturnModel {
    double mu = 0.0;
    double sigma = 0.0;

    double pdf(double x) const;
    double cdf(double x) const;
};

struct LogMoments {
    double mean = 0.0;
    double sd = 0.0;
};

// return_k = ((I_{k+1} + D_k) / I_k) * (C_k / C_{k+1})
std::vector<double> compute_real_returns(std::span<const PriceRecord> records);

// Sample mean and sample standard deviation (n-1 divisor).
ReturnModel fit_return_model(std::span<const double> returns);

// Diagnostic moments of log(x) over the positive entries (n-1 divisor).
LogMoments log_moments(std::span<const double> xs);

double draw_return(const ReturnModel& model, CounterRng& rng);

// CSV with header `year,index,dividend,cpi`, contiguous ascending years.
std::vector<PriceRecord> load_price_csv(const std::string& path);

void validate_records(std::span<const PriceRecord> records);

}  // namespace wso
