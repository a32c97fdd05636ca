// Times the OpenMP kernels against the plain serial references and checks the
// outputs are bit-identical.

#include <chrono>
#include <cstring>
#include <iostream>

#include "wso/dp_solver.hpp"
#include "wso/io.hpp"
#include "wso/reference.hpp"
#include "wso/simulator.hpp"

namespace chr = std::chrono;

namespace {

double seconds_since(chr::steady_clock::time_point t0) {
    return chr::duration<double>(chr::steady_clock::now() - t0).count();
}

bool same_surface(const wso::Surface& a, const wso::Surface& b) {
    if (a.horizon() != b.horizon()) return false;
    for (int i = 0; i < a.horizon(); ++i) {
        const auto& sa = a.stages[static_cast<std::size_t>(i)];
        const auto& sb = b.stages[static_cast<std::size_t>(i)];
        if (std::memcmp(sa.value.data(), sb.value.data(),
                        sa.value.size() * sizeof(double)) != 0)
            return false;
        if (std::memcmp(sa.weight.data(), sb.weight.data(),
                        sa.weight.size() * sizeof(double)) != 0)
            return false;
    }
    return a.v0_at_c0 == b.v0_at_c0;
}

}  // namespace

int main() {
    const wso::ReturnModel model{1.083, 0.1753};

    {
        const auto schedule = wso::lump_sum_schedule(7.0, 12);
        const auto thresholds = wso::compute_thresholds(schedule, 0.0, 0.0);
        wso::SolverConfig config;
        config.grid_resolution = 150;

        auto t0 = chr::steady_clock::now();
        const auto ref = wso::ref::backward_induction(schedule, thresholds, model, config);
        const double t_ref = seconds_since(t0);

        config.threads = 1;
        t0 = chr::steady_clock::now();
        const auto one = wso::backward_induction(schedule, thresholds, model, config);
        const double t_one = seconds_since(t0);

        config.threads = 0;
        t0 = chr::steady_clock::now();
        const auto par = wso::backward_induction(schedule, thresholds, model, config);
        const double t_par = seconds_since(t0);

        std::cout << "solver  (k=12, M=150)\n"
                  << "  serial reference : " << t_ref << " s\n"
                  << "  kernel, 1 thread : " << t_one << " s  (node windowing)\n"
                  << "  kernel, all cores: " << t_par << " s  (speedup vs ref "
                  << t_ref / t_par << "x)\n"
                  << "  bit-identical    : "
                  << (same_surface(ref, one) && same_surface(ref, par) ? "yes" : "NO")
                  << "\n";
    }

    {
        const auto schedule = wso::lump_sum_schedule(18.0, 30);
        const auto policy = wso::Policy::constant(1.0);
        wso::SimConfig config;
        config.paths = 400000;
        config.seed = 99;

        auto t0 = chr::steady_clock::now();
        const auto ref = wso::ref::simulate_success(schedule, policy, model, config);
        const double t_ref = seconds_since(t0);

        t0 = chr::steady_clock::now();
        const auto par = wso::simulate_success(schedule, policy, model, config);
        const double t_par = seconds_since(t0);

        std::cout << "simulator (k=30, N=400000)\n"
                  << "  serial reference : " << t_ref << " s\n"
                  << "  kernel, all cores: " << t_par << " s  (speedup "
                  << t_ref / t_par << "x)\n"
                  << "  identical        : "
                  << (ref.estimate == par.estimate ? "yes" : "NO") << "\n";
    }
    return 0;
}
