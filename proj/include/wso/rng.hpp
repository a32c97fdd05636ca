#pragma once

#include <cmath>
#include <cstdint>

namespace wso {

// Counter-based generator built on the splitmix64 finalizer. Every (seed,
// stream, substream) triple yields an independent sequence, so Monte Carlo
// paths can be assigned their own streams and produce identical draws no
// matter how work is distributed over threads.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : state_(mix(seed ^ kInit)) {}

    static CounterRng substream(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t substream) {
        CounterRng r(0);
        std::uint64_t s = mix(seed ^ kInit);
        s = mix(s ^ (stream * 0x9E3779B97F4A7C15ULL));
        s = mix(s ^ (substream * 0xC2B2AE3D27D4EB4FULL));
        r.state_ = s;
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform on [0, 1); u < p is an exact Bernoulli(p) even for p = 0 or 1.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_uniform() < p; }

    // Box-Muller, one variate per call; u1 lies in (0, 1] so the log is finite.
    double next_normal(double mu, double sigma) {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return mu + sigma * radius * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    static constexpr std::uint64_t kInit = 0x853C49E6748FEA9BULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace wso
