#pragma once

#include "mirrorsim/geometry.hpp"
#include "mirrorsim/mechanics.hpp"

namespace mirrorsim {

// State of one cross-section of the tilted, vertically displaced plate over
// an electrode strip. z > 0 moves the plate toward the electrode; the local
// gap under the plate edge at lateral offset y is h - y*theta - z, which must
// stay positive at both electrode edges (no contact).
struct CapState {
    double theta = 0.0;    // rad
    double z = 0.0;        // m
    double a = 0.0;        // m, near electrode edge
    double b = 0.0;        // m, far electrode edge
    double h = 0.0;        // m, rest gap
    double epsilon = kVacuumPermittivity;  // F/m
};

// Composite Simpson along x within each electrode segment.
struct QuadratureRule {
    int points_per_segment = 65;  // must be odd and >= 3
};

// Per-unit-length parallel-plate capacitance of the tilted section:
//   c_m = (eps/theta) * ln((h - a*theta - z) / (h - b*theta - z)),
// with a Taylor branch near theta = 0 where the closed form cancels.
double line_capacitance(const CapState& s);

// Exact theta-partial of line_capacitance (F/(m*rad)). Positive for
// theta > 0, b > a >= 0.
double dc_dtheta(const CapState& s);

// Exact z-partial of line_capacitance: eps (b-a) / ((h - b*theta - z)(h - a*theta - z)).
// Regular at theta = 0, strictly positive.
double dc_dz(const CapState& s);

// Integral of dc_dtheta (resp. dc_dz) over every electrode segment, with the
// plate displacement z taken from the beam shape at each quadrature station.
// Throws ContactError carrying the offending global-axis x if the gap closes
// anywhere under an electrode.
double integrate_dc_dtheta(const DeviceConfig& config, double theta, const BeamShape& shape,
                           const QuadratureRule& rule);
double integrate_dc_dz(const DeviceConfig& config, double theta, const BeamShape& shape,
                       const QuadratureRule& rule);

namespace detail {

// Dimensionless branch parameter u = theta * max(|a|, |b|) / (h - z); the
// closed forms switch to series below |u| = 1e-4.
inline constexpr double kSeriesSwitch = 1e-4;
double branch_parameter(const CapState& s);

// Both branches exposed for continuity checks at the switch point.
double line_capacitance_exact(const CapState& s);
double line_capacitance_series(const CapState& s);
double dc_dtheta_exact(const CapState& s);
double dc_dtheta_series(const CapState& s);

}  // namespace detail

}  // namespace mirrorsim
