#pragma once

#include <memory>

#include "wso/dp_solver.hpp"

namespace wso {

// Stock weight at stage i off the grid: 1 at or below wealth 0, 0 at or above
// w_i, linear between adjacent nodes of D_i ∪ {0} otherwise.
double interpolated_weight(const Surface& surface, int stage, double x);

// Either a constant weight or a solved surface evaluated by interpolation.
class Policy {
public:
    static Policy constant(double q);
    static Policy interpolated(std::shared_ptr<const Surface> surface);

    double weight(int stage, double wealth) const;
    bool is_constant() const { return !surface_; }

private:
    Policy() = default;
    double q_ = 0.0;
    std::shared_ptr<const Surface> surface_;
};

}  // namespace wso
