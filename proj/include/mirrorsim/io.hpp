#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "mirrorsim/solver.hpp"

namespace mirrorsim {

// Loads and validates a device description. The file is a single JSON
// document with SI-unit-suffixed field names:
//
//   {
//     "material": {"youngs_modulus_pa": ..., "shear_modulus_pa": ...,
//                  "permittivity_f_per_m": ...},          // permittivity optional
//     "spring":   {"length_m": ..., "width_m": ..., "thickness_m": ...},
//     "mirror":   {"length_m": ..., "width_m": ..., "thickness_m": ...,
//                  "inertia_override_m4": ...},           // override optional
//     "gap_m": ...,
//     "electrodes": [{"x_start_m": ..., "x_end_m": ..., "a_m": ..., "b_m": ...}, ...]
//   }
//
// Unknown keys are rejected. Throws ConfigError for I/O, parse, or schema
// problems (with byte position for parse errors) and ValidationError when the
// parsed values violate a physical invariant.
DeviceConfig load_config(const std::filesystem::path& path);

// One row of a voltage-tilt curve file.
struct CurveRecord {
    double theta_rad = 0.0;
    double voltage_v = 0.0;
    double w_eq_n_per_m = 0.0;
    double u_max_m = 0.0;
    int iterations = 0;
    bool converged = false;
};

std::vector<CurveRecord> to_records(const Curve& curve);

struct ShapeSample {
    double x_m = 0.0;
    double u_z_m = 0.0;
};

// n >= 2 uniform samples of the deflected axis over [0, total_length].
std::vector<ShapeSample> sample_shape(const BeamShape& shape, int n);

// CSV writers: fixed header, 17-significant-digit doubles (values round-trip
// bit-exactly), LF line endings. Pass an output stream or a path.
void write_curve_csv(const Curve& curve, std::ostream& os);
void write_curve_csv(const Curve& curve, const std::filesystem::path& path);
void write_shape_csv(std::span<const ShapeSample> samples, std::ostream& os);
void write_shape_csv(std::span<const ShapeSample> samples, const std::filesystem::path& path);

}  // namespace mirrorsim
