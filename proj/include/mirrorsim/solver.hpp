#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mirrorsim/electrostatics.hpp"
#include "mirrorsim/geometry.hpp"
#include "mirrorsim/mechanics.hpp"

namespace mirrorsim {

enum class ModelKind { bending, rigid };

struct ThetaGridSpec {
    int points = 200;
    // Defaults when unset: theta_geo/1000 and 0.98*theta_geo.
    std::optional<double> theta_min;
    std::optional<double> theta_max;

    std::vector<double> build(double theta_geo) const;
};

struct SolverOptions {
    double load_rel_tol = 1e-8;
    double load_floor = 1e-12;   // N/m, absolute floor for the relative test
    int max_iterations = 100;
    double relaxation = 1.0;     // lambda in (0, 1]; drops to 0.5 on oscillation
    double initial_load = 0.0;   // N/m, w_eq seed (nonzero only for perturbation studies)
    QuadratureRule quadrature{};
    ThetaGridSpec theta_grid{};
};

// One converged operating point: shape == solve_beam(w_eq) and
// voltage == equilibrium_voltage(theta, shape) hold exactly; the load update
// residual is below tolerance when converged is set.
struct EquilibriumPoint {
    double theta = 0.0;    // rad
    double voltage = 0.0;  // V
    double w_eq = 0.0;     // N/m
    BeamShape shape;
    int iterations = 0;
    bool converged = false;
};

struct Curve {
    ModelKind model = ModelKind::bending;
    std::vector<EquilibriumPoint> points;
    // Set when the sweep stopped early because the plate touched.
    std::optional<std::string> truncation_reason;
};

struct PullInResult {
    double v_pullin = 0.0;      // V
    double theta_pullin = 0.0;  // rad
    double u_max_pullin = 0.0;  // m
    double bracket_lo = 0.0;    // rad, coarse bracket handed to the refiner
    double bracket_hi = 0.0;    // rad
};

// Per-iteration convergence record of a fixed_point run.
struct FixedPointTrace {
    std::vector<double> residuals;       // |w_(i+1) - w_i|
    std::vector<double> voltages;        // V_i of each step (V_1 is the rigid value)
    bool relaxation_fallback = false;    // lambda was dropped to 0.5
};

// Voltage balancing the spring torque at the given tilt and bending shape:
// V = sqrt(2 k_theta theta / integral of dc/dtheta).
double equilibrium_voltage(const DeviceConfig& config, const SectionProperties& props,
                           double theta, const BeamShape& shape, const QuadratureRule& rule);

// Equivalent uniform load implied by the electrostatic pressure:
// w_eq' = V^2 / (2 L_m) * integral of dc/dz.
double update_load(const DeviceConfig& config, const SectionProperties& props, double theta,
                   double voltage, const BeamShape& shape, const QuadratureRule& rule);

// Self-consistent electromechanical point at one tilt angle: starting from
// w_eq = 0, alternate voltage balance, beam solve, and load update until the
// load settles. Throws ContactError if the gap closes during iteration;
// returns converged = false when max_iterations runs out.
EquilibriumPoint fixed_point(const DeviceConfig& config, const SectionProperties& props,
                             double theta, const SolverOptions& opts,
                             FixedPointTrace* trace = nullptr);

// Voltage-tilt curve over a strictly increasing grid in (0, theta_geo). The
// rigid model evaluates the torque balance with the undeformed axis (w_eq = 0)
// at each angle; the bending model runs fixed_point. Points past first contact
// are dropped and the reason recorded.
Curve sweep(const DeviceConfig& config, const SectionProperties& props,
            std::span<const double> theta_grid, const SolverOptions& opts, ModelKind model);

// Locates the maximum of V(theta) — the pull-in point — by a coarse sweep
// followed by golden-section refinement of the bracket (relative theta
// tolerance 1e-6). Throws ContactLimitedError when the curve is still rising
// at the last reachable angle.
PullInResult find_pullin(const DeviceConfig& config, const SectionProperties& props,
                         const SolverOptions& opts, ModelKind model);

}  // namespace mirrorsim
