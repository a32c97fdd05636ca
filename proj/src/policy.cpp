#include "wso/policy.hpp"

#include <algorithm>

#include "wso/errors.hpp"

namespace wso {

double interpolated_weight(const Surface& s, int stage, double x) {
    if (stage < 0 || stage >= s.horizon())
        throw validation_error("stage out of range");
    const auto& st = s.stages[static_cast<std::size_t>(stage)];
    if (x <= 0.0) return 1.0;
    if (x >= st.w) return 0.0;
    const double step = st.w / s.M;
    const auto it = std::upper_bound(st.grid.begin(), st.grid.end(), x);
    double out;
    if (it == st.grid.begin()) {
        // below the first node: y_x = 0 carries weight 1
        out = 1.0 + x / step * (st.weight[0] - 1.0);
    } else {
        const std::size_t j = static_cast<std::size_t>(it - st.grid.begin() - 1);
        if (st.grid[j] == x) return st.weight[j];
        out = st.weight[j] +
              (x - st.grid[j]) / step * (st.weight[j + 1] - st.weight[j]);
    }
    return std::clamp(out, 0.0, 1.0);
}

Policy Policy::constant(double q) {
    if (!(q >= 0.0) || q > 1.0)
        throw validation_error("constant weight must lie in [0, 1]");
    Policy p;
    p.q_ = q;
    return p;
}

Policy Policy::interpolated(std::shared_ptr<const Surface> surface) {
    if (!surface || surface->horizon() < 1)
        throw validation_error("policy needs a non-empty surface");
    Policy p;
    p.surface_ = std::move(surface);
    return p;
}

double Policy::weight(int stage, double wealth) const {
    if (!surface_) return q_;
    return interpolated_weight(*surface_, stage, wealth);
}

}  // namespace wso
