#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirrorsim {

// Invalid device description. Carries one message per violated invariant so a
// user can fix the whole file in one pass.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> issues);

    const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    std::vector<std::string> issues_;
};

// Config file could not be read or parsed (I/O problem, bad JSON, wrong types,
// unknown keys). Distinct from ValidationError, which means the parsed values
// violate a physical invariant.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The local gap h - y*theta - z closed somewhere under the plate. No static
// equilibrium exists at or beyond this state.
class ContactError : public std::runtime_error {
public:
    ContactError(double residual_gap, double x_location);
    explicit ContactError(double residual_gap);

    double residual_gap() const noexcept { return residual_gap_; }
    // Global-axis x of the offending quadrature point; NaN when the state is
    // not tied to a location.
    double location() const noexcept { return x_location_; }

private:
    double residual_gap_;
    double x_location_;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pull-in search failed: V(theta) kept rising until the plate touched, so the
// curve has no interior maximum below the geometric limit.
class ContactLimitedError : public SolverError {
public:
    using SolverError::SolverError;
};

}  // namespace mirrorsim
