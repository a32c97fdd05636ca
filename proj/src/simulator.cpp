#include "wso/simulator.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wso/errors.hpp"

namespace wso {

namespace {

// Paths are grouped into fixed blocks; per-block partials are folded in block
// order so floating-point reductions do not depend on the thread count.
constexpr long long kBlock = 4096;

int worker_count(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

SimResult finish(long long successes, const SimConfig& config) {
    const double p =
        static_cast<double>(successes) / static_cast<double>(config.paths);
    return SimResult{p, std::sqrt(p * (1.0 - p) / static_cast<double>(config.paths)),
                     config.paths, config.seed};
}

}  // namespace

SimResult simulate_success(const CashFlowSchedule& s, const Policy& policy,
                           const ReturnModel& model, const SimConfig& config) {
    validate_schedule(s);
    if (config.paths < 1) throw validation_error("need at least one path");
    const int k = s.horizon();
    const int nthreads = worker_count(config.threads);
    (void)nthreads;
    long long successes = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : successes) schedule(static) \
    num_threads(nthreads)
#endif
    for (long long path = 0; path < config.paths; ++path) {
        CounterRng rng = CounterRng::substream(config.seed,
                                               static_cast<std::uint64_t>(path), 0);
        double wealth = s.flows[0];
        for (int i = 1; i <= k; ++i) {
            const double q = policy.weight(i - 1, wealth);
            const double draw = rng.next_normal(model.mu, model.sigma);
            wealth = (q * draw + (1.0 - q) * (1.0 + config.bond_rate)) * wealth +
                     s.flows[static_cast<std::size_t>(i)];
        }
        if (wealth >= config.disaster) ++successes;
    }
    return finish(successes, config);
}

SimResult simulate_success_mortality(const CashFlowSchedule& s, const Policy& policy,
                                     const ReturnModel& model,
                                     const HazardSequence& hazards,
                                     const SimConfig& config) {
    validate_schedule(s);
    if (config.paths < 1) throw validation_error("need at least one path");
    const int k = s.horizon();
    if (hazards.horizon() != k)
        throw validation_error("hazard sequence length must equal the horizon");
    const int nthreads = worker_count(config.threads);
    (void)nthreads;
    long long successes = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : successes) schedule(static) \
    num_threads(nthreads)
#endif
    for (long long path = 0; path < config.paths; ++path) {
        CounterRng returns = CounterRng::substream(config.seed,
                                                   static_cast<std::uint64_t>(path), 0);
        CounterRng death = CounterRng::substream(config.seed,
                                                 static_cast<std::uint64_t>(path), 1);
        const std::size_t death_idx = sample_death_index(hazards, death);
        double wealth = s.flows[0];
        for (int i = 1; i <= k; ++i) {
            if (static_cast<std::size_t>(i) > death_idx) break;  // frozen at death
            const double q = policy.weight(i - 1, wealth);
            const double draw = returns.next_normal(model.mu, model.sigma);
            wealth = (q * draw + (1.0 - q) * (1.0 + config.bond_rate)) * wealth +
                     s.flows[static_cast<std::size_t>(i)];
        }
        if (wealth >= config.disaster) ++successes;
    }
    return finish(successes, config);
}

IntervalDecomposition success_by_interval(const CashFlowSchedule& s,
                                          const Policy& policy,
                                          const ReturnModel& model,
                                          const HazardSequence& hazards,
                                          const SimConfig& config) {
    validate_schedule(s);
    if (config.paths < 1) throw validation_error("need at least one path");
    const int k = s.horizon();
    if (hazards.horizon() != k)
        throw validation_error("hazard sequence length must equal the horizon");

    IntervalDecomposition out;
    out.death = interval_death_probabilities(hazards);
    out.n = config.paths;
    out.seed = config.seed;

    // Per-path statistic: sum of death-interval weights over the horizons the
    // path clears (residual weight on the full horizon).
    std::vector<double> weight(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < k; ++i) weight[static_cast<std::size_t>(i)] = out.death.interval[static_cast<std::size_t>(i)];
    weight[static_cast<std::size_t>(k)] = out.death.residual;

    const long long nblocks = (config.paths + kBlock - 1) / kBlock;
    std::vector<double> block_sq(static_cast<std::size_t>(nblocks), 0.0);
    std::vector<long long> counts(static_cast<std::size_t>(k) + 1, 0);
    const int nthreads = worker_count(config.threads);
    (void)nthreads;

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads)
#endif
    {
        std::vector<long long> local(static_cast<std::size_t>(k) + 1, 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long long b = 0; b < nblocks; ++b) {
            const long long lo = b * kBlock;
            const long long hi = std::min(config.paths, lo + kBlock);
            double sq = 0.0;
            for (long long path = lo; path < hi; ++path) {
                CounterRng rng = CounterRng::substream(
                    config.seed, static_cast<std::uint64_t>(path), 0);
                double wealth = s.flows[0];
                double stat = 0.0;
                if (wealth >= config.disaster) {
                    ++local[0];
                    stat += weight[0];
                }
                for (int i = 1; i <= k; ++i) {
                    const double q = policy.weight(i - 1, wealth);
                    const double draw = rng.next_normal(model.mu, model.sigma);
                    wealth = (q * draw + (1.0 - q) * (1.0 + config.bond_rate)) * wealth +
                             s.flows[static_cast<std::size_t>(i)];
                    if (wealth >= config.disaster) {
                        ++local[static_cast<std::size_t>(i)];
                        stat += weight[static_cast<std::size_t>(i)];
                    }
                }
                sq += stat * stat;
            }
            block_sq[static_cast<std::size_t>(b)] = sq;
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
        }
    }

    const double n = static_cast<double>(config.paths);
    out.horizon_success.resize(static_cast<std::size_t>(k) + 1);
    double total = 0.0;
    for (int i = 0; i <= k; ++i) {
        const double pi = static_cast<double>(counts[static_cast<std::size_t>(i)]) / n;
        out.horizon_success[static_cast<std::size_t>(i)] = pi;
        total += weight[static_cast<std::size_t>(i)] * pi;
    }
    out.total = total;

    double sumsq = 0.0;
    for (long long b = 0; b < nblocks; ++b) sumsq += block_sq[static_cast<std::size_t>(b)];
    const double var = std::max(0.0, sumsq / n - total * total);
    out.stderr_ = std::sqrt(var / n);
    return out;
}

}  // namespace wso
