#pragma once

#include <stdexcept>
#include <string>

namespace wso {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument values: invalid weights, malformed schedules, out-of-range ages.
class validation_error : public error {
public:
    using error::error;
};

// Input files that cannot be parsed or violate their documented layout.
class format_error : public error {
public:
    using error::error;
};

// Too few records to compute anything.
class insufficient_data_error : public error {
public:
    using error::error;
};

// All inputs identical; a zero-variance fit has no usable distribution.
class degenerate_distribution_error : public error {
public:
    using error::error;
};

// Some threshold w_i <= 0 before the horizon: the bond alone completes the
// remaining schedule with probability 1, so the optimization is vacuous.
class trivially_satisfiable_error : public validation_error {
public:
    trivially_satisfiable_error(int stage, const std::string& msg)
        : validation_error(msg), stage_(stage) {}
    int stage() const { return stage_; }

private:
    int stage_;
};

// A sweep bracket whose top cannot reach the requested confidence.
class not_achievable_error : public error {
public:
    not_achievable_error(double value_at_top, const std::string& msg)
        : error(msg), value_at_top_(value_at_top) {}
    double value_at_top() const { return value_at_top_; }

private:
    double value_at_top_;
};

}  // namespace wso
