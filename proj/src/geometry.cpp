#include "mirrorsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace mirrorsim {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
    std::ostringstream os;
    os << "invalid device config (" << issues.size() << " issue"
       << (issues.size() == 1 ? "" : "s") << "):";
    for (const auto& s : issues) os << "\n  - " << s;
    return os.str();
}

std::string fmt_len(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ContactError::ContactError(double residual_gap, double x_location)
    : std::runtime_error("contact: residual gap " + fmt_len(residual_gap) +
                         " m <= 0 at x = " + fmt_len(x_location) + " m (global axis)"),
      residual_gap_(residual_gap),
      x_location_(x_location) {}

ContactError::ContactError(double residual_gap)
    : std::runtime_error("contact: residual gap " + fmt_len(residual_gap) + " m <= 0"),
      residual_gap_(residual_gap),
      x_location_(std::nan("")) {}

double DeviceConfig::max_b() const {
    double m = 0.0;
    for (const auto& e : electrodes) m = std::max(m, e.b);
    return m;
}

double DeviceConfig::theta_geo() const { return gap / max_b(); }

double DeviceConfig::total_length() const { return 2.0 * spring.length + mirror.length; }

DeviceConfig validate_config(DeviceConfig raw) {
    std::vector<std::string> issues;
    auto positive = [&issues](double v, const char* path) {
        if (!(v > 0.0)) issues.push_back(std::string(path) + " must be > 0 (got " + fmt_len(v) + ")");
    };

    positive(raw.material.youngs_modulus, "material.youngs_modulus");
    positive(raw.material.shear_modulus, "material.shear_modulus");
    positive(raw.material.permittivity, "material.permittivity");

    positive(raw.spring.length, "spring.length");
    positive(raw.spring.width, "spring.width");
    positive(raw.spring.thickness, "spring.thickness");

    positive(raw.mirror.length, "mirror.length");
    positive(raw.mirror.width, "mirror.width");
    positive(raw.mirror.thickness, "mirror.thickness");
    if (raw.mirror.inertia_override && !(*raw.mirror.inertia_override > 0.0))
        issues.push_back("mirror.inertia_override must be > 0 (got " +
                         fmt_len(*raw.mirror.inertia_override) + ")");
    // The one-angle-plus-bending model needs a strip, not a plate.
    if (raw.mirror.width > 0.0 && raw.mirror.length > 0.0 && !(raw.mirror.width < raw.mirror.length))
        issues.push_back("mirror.width must be < mirror.length (model validity)");

    positive(raw.gap, "gap");

    if (raw.electrodes.empty()) {
        issues.push_back("electrodes must be non-empty");
    } else {
        const double half_width = raw.mirror.width / 2.0;
        for (std::size_t i = 0; i < raw.electrodes.size(); ++i) {
            const auto& e = raw.electrodes[i];
            const std::string p = "electrodes[" + std::to_string(i) + "]";
            if (!(e.x_start >= 0.0)) issues.push_back(p + ".x_start must be >= 0");
            if (!(e.x_start < e.x_end)) issues.push_back(p + ": x_start < x_end violated");
            if (raw.mirror.length > 0.0 && !(e.x_end <= raw.mirror.length))
                issues.push_back(p + ".x_end exceeds mirror.length");
            if (!(e.a >= 0.0)) issues.push_back(p + ".a must be >= 0");
            if (!(e.a < e.b)) issues.push_back(p + ": a < b violated");
            if (raw.mirror.width > 0.0 && !(e.b <= half_width))
                issues.push_back(p + ".b exceeds the mirror half-width " + fmt_len(half_width));
        }
        std::sort(raw.electrodes.begin(), raw.electrodes.end(),
                  [](const ElectrodeSegment& l, const ElectrodeSegment& r) {
                      return l.x_start < r.x_start;
                  });
        for (std::size_t i = 0; i + 1 < raw.electrodes.size(); ++i) {
            // Touching end points are allowed; overlap of positive measure is not.
            if (raw.electrodes[i].x_end > raw.electrodes[i + 1].x_start)
                issues.push_back("electrodes[" + std::to_string(i) + "] and electrodes[" +
                                 std::to_string(i + 1) + "] overlap in x");
        }
    }

    if (!issues.empty()) throw ValidationError(std::move(issues));
    return raw;
}

double torsion_constant(double thickness, double width, double rel_tol) {
    if (!(thickness > 0.0) || !(width > 0.0))
        throw std::invalid_argument("torsion_constant: sides must be > 0");
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
        throw std::invalid_argument("torsion_constant: rel_tol must be in (0, 1)");

    const double c_long = std::max(thickness, width);
    const double c_short = std::min(thickness, width);
    const double ratio = c_long / c_short;

    // tanh saturates for i*ratio beyond ~20, after which the terms are 1/i^5.
    double sum = 0.0;
    for (long i = 1;; i += 2) {
        const double term =
            std::tanh(0.5 * std::numbers::pi * static_cast<double>(i) * ratio) /
            std::pow(static_cast<double>(i), 5);
        sum += term;
        if (term < rel_tol * sum) break;
    }
    const double correction =
        192.0 * c_short / (std::pow(std::numbers::pi, 5) * c_long) * sum;
    return (1.0 / 3.0) * c_long * c_short * c_short * c_short * (1.0 - correction);
}

double torsional_stiffness(const Material& material, const SpringGeometry& spring, double j_p) {
    if (!(material.shear_modulus > 0.0) || !(spring.length > 0.0) || !(j_p > 0.0))
        throw std::invalid_argument("torsional_stiffness: inputs must be > 0");
    return 2.0 * material.shear_modulus * j_p / spring.length;
}

SectionProperties section_properties(const DeviceConfig& config, double rel_tol) {
    SectionProperties p;
    p.j_p = torsion_constant(config.spring.thickness, config.spring.width, rel_tol);
    p.k_theta = torsional_stiffness(config.material, config.spring, p.j_p);
    p.i_spring = config.spring.width * std::pow(config.spring.thickness, 3) / 12.0;
    p.i_mirror = config.mirror.inertia_override
                     ? *config.mirror.inertia_override
                     : config.mirror.width * std::pow(config.mirror.thickness, 3) / 12.0;
    return p;
}

}  // namespace mirrorsim
