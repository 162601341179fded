#include "mirrorsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mirrorsim {

std::vector<double> ThetaGridSpec::build(double theta_geo) const {
    if (points < 1) throw std::invalid_argument("ThetaGridSpec: points must be >= 1");
    const double lo = theta_min.value_or(theta_geo / 1000.0);
    const double hi = theta_max.value_or(0.98 * theta_geo);
    if (!(lo > 0.0) || !(lo < hi) || !(hi < theta_geo))
        throw std::invalid_argument("ThetaGridSpec: need 0 < theta_min < theta_max < theta_geo");
    std::vector<double> grid(static_cast<std::size_t>(points));
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + i * step;
    grid.back() = hi;
    return grid;
}

double equilibrium_voltage(const DeviceConfig& config, const SectionProperties& props,
                           double theta, const BeamShape& shape, const QuadratureRule& rule) {
    if (!(theta > 0.0)) throw std::invalid_argument("equilibrium_voltage: theta must be > 0");
    const double torque_integral = integrate_dc_dtheta(config, theta, shape, rule);
    if (!(torque_integral > 0.0))
        throw SolverError("equilibrium_voltage: non-positive torque integral (invalid geometry?)");
    return std::sqrt(2.0 * props.k_theta * theta / torque_integral);
}

double update_load(const DeviceConfig& config, const SectionProperties& /*props*/, double theta,
                   double voltage, const BeamShape& shape, const QuadratureRule& rule) {
    const double force_integral = integrate_dc_dz(config, theta, shape, rule);
    return voltage * voltage / (2.0 * config.mirror.length) * force_integral;
}

EquilibriumPoint fixed_point(const DeviceConfig& config, const SectionProperties& props,
                             double theta, const SolverOptions& opts, FixedPointTrace* trace) {
    if (!(theta > 0.0) || !(theta < config.theta_geo()))
        throw std::invalid_argument("fixed_point: theta must lie in (0, theta_geo)");
    if (!(opts.load_rel_tol > 0.0)) throw std::invalid_argument("fixed_point: load_rel_tol must be > 0");
    if (opts.max_iterations < 1) throw std::invalid_argument("fixed_point: max_iterations must be >= 1");
    if (!(opts.relaxation > 0.0) || !(opts.relaxation <= 1.0))
        throw std::invalid_argument("fixed_point: relaxation must be in (0, 1]");

    double lambda = opts.relaxation;
    double w = opts.initial_load;
    double prev_residual = std::numeric_limits<double>::infinity();

    BeamShape shape;
    double voltage = 0.0;
    double w_next = w;
    bool converged = false;
    int it = 0;
    while (it < opts.max_iterations) {
        ++it;
        shape = solve_beam(props, config.material, config.spring, config.mirror, w);
        voltage = equilibrium_voltage(config, props, theta, shape, opts.quadrature);
        const double w_raw = update_load(config, props, theta, voltage, shape, opts.quadrature);
        w_next = (1.0 - lambda) * w + lambda * w_raw;
        const double residual = std::abs(w_next - w);
        if (trace) {
            trace->residuals.push_back(residual);
            trace->voltages.push_back(voltage);
        }
        if (residual <= opts.load_rel_tol * std::max(w_next, opts.load_floor)) {
            converged = true;
            break;
        }
        // The plain map normally contracts monotonically; a growing residual
        // means it started to oscillate (stiff regime near pull-in).
        if (residual > prev_residual && lambda > 0.5) {
            lambda = 0.5;
            if (trace) trace->relaxation_fallback = true;
        }
        prev_residual = residual;
        w = w_next;
    }

    // Refresh the returned triple so shape == solve_beam(w_eq) and
    // voltage == equilibrium_voltage(theta, shape) hold exactly.
    EquilibriumPoint point;
    point.theta = theta;
    point.w_eq = w_next;
    point.shape = solve_beam(props, config.material, config.spring, config.mirror, w_next);
    point.voltage = equilibrium_voltage(config, props, theta, point.shape, opts.quadrature);
    point.iterations = it;
    point.converged = converged;
    return point;
}

namespace {

EquilibriumPoint rigid_point(const DeviceConfig& config, const SectionProperties& props,
                             double theta, const SolverOptions& opts) {
    EquilibriumPoint point;
    point.theta = theta;
    point.w_eq = 0.0;
    point.shape = BeamShape::zero(config.spring, config.mirror);
    point.voltage = equilibrium_voltage(config, props, theta, point.shape, opts.quadrature);
    point.iterations = 1;
    point.converged = true;
    return point;
}

std::string contact_reason(double theta, const ContactError& err) {
    std::ostringstream os;
    os << "contact at theta = " << theta << " rad: " << err.what();
    return os.str();
}

}  // namespace

Curve sweep(const DeviceConfig& config, const SectionProperties& props,
            std::span<const double> theta_grid, const SolverOptions& opts, ModelKind model) {
    if (theta_grid.empty()) throw std::invalid_argument("sweep: empty theta grid");
    for (std::size_t i = 0; i + 1 < theta_grid.size(); ++i)
        if (!(theta_grid[i] < theta_grid[i + 1]))
            throw std::invalid_argument("sweep: theta grid must be strictly increasing");
    if (!(theta_grid.front() > 0.0) || !(theta_grid.back() < config.theta_geo()))
        throw std::invalid_argument("sweep: theta grid must lie within (0, theta_geo)");

    Curve curve;
    curve.model = model;
    curve.points.reserve(theta_grid.size());
    for (const double theta : theta_grid) {
        try {
            curve.points.push_back(model == ModelKind::rigid
                                       ? rigid_point(config, props, theta, opts)
                                       : fixed_point(config, props, theta, opts));
        } catch (const ContactError& err) {
            curve.truncation_reason = contact_reason(theta, err);
            break;
        }
    }
    return curve;
}

namespace {

// V(theta) for the pull-in search; contact counts as "past pull-in".
double voltage_or_minus_inf(const DeviceConfig& config, const SectionProperties& props,
                            double theta, const SolverOptions& opts, ModelKind model) {
    try {
        if (model == ModelKind::rigid)
            return rigid_point(config, props, theta, opts).voltage;
        return fixed_point(config, props, theta, opts).voltage;
    } catch (const ContactError&) {
        return -std::numeric_limits<double>::infinity();
    }
}

}  // namespace

PullInResult find_pullin(const DeviceConfig& config, const SectionProperties& props,
                         const SolverOptions& opts, ModelKind model) {
    const std::vector<double> grid = opts.theta_grid.build(config.theta_geo());

    std::vector<double> voltages;
    voltages.reserve(grid.size());
    for (const double theta : grid) {
        const double v = voltage_or_minus_inf(config, props, theta, opts, model);
        if (std::isinf(v)) break;  // contact: nothing evaluable beyond here
        voltages.push_back(v);
    }
    if (voltages.size() < 2)
        throw ContactLimitedError("find_pullin: contact before the second sweep point");

    std::size_t k = 0;
    for (std::size_t i = 1; i < voltages.size(); ++i)
        if (voltages[i] > voltages[k]) k = i;
    if (k + 1 == voltages.size())
        throw ContactLimitedError(
            "find_pullin: V(theta) still rising at the last reachable angle (contact-limited)");

    const double lo = k > 0 ? grid[k - 1] : grid[k] * 0.5;
    const double hi = grid[k + 1];

    // Golden-section maximization of V(theta) on [lo, hi].
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = voltage_or_minus_inf(config, props, x1, opts, model);
    double f2 = voltage_or_minus_inf(config, props, x2, opts, model);
    while (b - a > 1e-6 * std::max(std::abs(a), std::abs(b))) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = voltage_or_minus_inf(config, props, x1, opts, model);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = voltage_or_minus_inf(config, props, x2, opts, model);
        }
    }
    const double theta_pi = (a + b) / 2.0;

    PullInResult result;
    result.theta_pullin = theta_pi;
    result.bracket_lo = lo;
    result.bracket_hi = hi;
    if (model == ModelKind::rigid) {
        result.v_pullin = rigid_point(config, props, theta_pi, opts).voltage;
        result.u_max_pullin = 0.0;
    } else {
        const EquilibriumPoint point = fixed_point(config, props, theta_pi, opts);
        result.v_pullin = point.voltage;
        result.u_max_pullin = max_deflection(point.shape);
    }
    return result;
}

}  // namespace mirrorsim
