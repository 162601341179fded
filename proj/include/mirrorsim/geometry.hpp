#pragma once

#include <optional>
#include <vector>

#include "mirrorsim/errors.hpp"

namespace mirrorsim {

inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

struct Material {
    double youngs_modulus = 0.0;                  // Pa
    double shear_modulus = 0.0;                   // Pa
    double permittivity = kVacuumPermittivity;    // F/m
};

struct SpringGeometry {
    double length = 0.0;     // m
    double width = 0.0;      // m, in-plane
    double thickness = 0.0;  // m, out-of-plane
};

struct MirrorGeometry {
    double length = 0.0;     // m
    double width = 0.0;      // m
    double thickness = 0.0;  // m
    // Replaces the solid-rectangle W*t^3/12 when release holes or similar
    // features reduce the bending inertia of the strip.
    std::optional<double> inertia_override;  // m^4
};

// One actuation electrode strip under the plate. x is mirror-local
// (0 = left end of the mirror strip); a and b are the distances of the
// near and far lateral electrode edges from the rotation axis.
struct ElectrodeSegment {
    double x_start = 0.0;  // m
    double x_end = 0.0;    // m
    double a = 0.0;        // m
    double b = 0.0;        // m
};

struct DeviceConfig {
    Material material;
    SpringGeometry spring;
    MirrorGeometry mirror;
    double gap = 0.0;  // m, electrode plane to plate underside at rest
    std::vector<ElectrodeSegment> electrodes;

    double max_b() const;
    // Tilt at which the far edge of the widest electrode would touch: gap / max b.
    double theta_geo() const;
    // Spring + mirror + spring span along the rotation axis.
    double total_length() const;
};

struct SectionProperties {
    double k_theta = 0.0;   // N*m/rad, both springs together
    double j_p = 0.0;       // m^4, torsion constant of the spring section
    double i_spring = 0.0;  // m^4, bending inertia of the spring section
    double i_mirror = 0.0;  // m^4, bending inertia of the mirror section
};

// Checks every invariant of the device description and returns the config
// with electrodes sorted by x_start. Throws ValidationError carrying one
// message per violation (all violations are reported, not just the first).
DeviceConfig validate_config(DeviceConfig raw);

// Saint-Venant torsion constant of a rectangular cross-section,
//   J_p = (1/3) c_long c_short^3 (1 - 192 c_short / (pi^5 c_long)
//           * sum_{i odd} tanh(i pi c_long / (2 c_short)) / i^5),
// with the series truncated once the next term changes the sum by less than
// rel_tol relatively. Symmetric in (thickness, width).
double torsion_constant(double thickness, double width, double rel_tol = 1e-12);

// Restoring stiffness of the two torsion springs: k_theta = 2 G J_p / L_s.
double torsional_stiffness(const Material& material, const SpringGeometry& spring, double j_p);

// Derives all section constants from a validated config. Bending inertias use
// the solid rectangle W*t^3/12; the mirror value is replaced by
// inertia_override when present.
SectionProperties section_properties(const DeviceConfig& config, double rel_tol = 1e-12);

}  // namespace mirrorsim
