#include "mirrorsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mirrorsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) fail("missing field \"" + path + key + "\"");
    return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) fail("field \"" + path + key + "\" must be a number");
    return v.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
    if (!obj.is_object()) fail("\"" + path + "\" must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) {
                known = true;
                break;
            }
        if (!known) fail("unknown field \"" + path + key + "\"");
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

DeviceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file: " + path.string());

    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("config parse error in " + path.string() + ": " + e.what());
    }

    reject_unknown(doc, {"material", "spring", "mirror", "gap_m", "electrodes"}, "");

    DeviceConfig cfg;

    const json& mat = require(doc, "material", "");
    reject_unknown(mat, {"youngs_modulus_pa", "shear_modulus_pa", "permittivity_f_per_m"},
                   "material.");
    cfg.material.youngs_modulus = number(mat, "youngs_modulus_pa", "material.");
    cfg.material.shear_modulus = number(mat, "shear_modulus_pa", "material.");
    if (mat.contains("permittivity_f_per_m"))
        cfg.material.permittivity = number(mat, "permittivity_f_per_m", "material.");

    const json& spr = require(doc, "spring", "");
    reject_unknown(spr, {"length_m", "width_m", "thickness_m"}, "spring.");
    cfg.spring.length = number(spr, "length_m", "spring.");
    cfg.spring.width = number(spr, "width_m", "spring.");
    cfg.spring.thickness = number(spr, "thickness_m", "spring.");

    const json& mir = require(doc, "mirror", "");
    reject_unknown(mir, {"length_m", "width_m", "thickness_m", "inertia_override_m4"}, "mirror.");
    cfg.mirror.length = number(mir, "length_m", "mirror.");
    cfg.mirror.width = number(mir, "width_m", "mirror.");
    cfg.mirror.thickness = number(mir, "thickness_m", "mirror.");
    if (mir.contains("inertia_override_m4"))
        cfg.mirror.inertia_override = number(mir, "inertia_override_m4", "mirror.");

    cfg.gap = number(doc, "gap_m", "");

    const json& els = require(doc, "electrodes", "");
    if (!els.is_array()) fail("field \"electrodes\" must be an array");
    for (std::size_t i = 0; i < els.size(); ++i) {
        const std::string p = "electrodes[" + std::to_string(i) + "].";
        reject_unknown(els[i], {"x_start_m", "x_end_m", "a_m", "b_m"}, p);
        ElectrodeSegment seg;
        seg.x_start = number(els[i], "x_start_m", p);
        seg.x_end = number(els[i], "x_end_m", p);
        seg.a = number(els[i], "a_m", p);
        seg.b = number(els[i], "b_m", p);
        cfg.electrodes.push_back(seg);
    }

    return validate_config(std::move(cfg));
}

std::vector<CurveRecord> to_records(const Curve& curve) {
    std::vector<CurveRecord> records;
    records.reserve(curve.points.size());
    for (const auto& p : curve.points)
        records.push_back({p.theta, p.voltage, p.w_eq, max_deflection(p.shape), p.iterations,
                           p.converged});
    return records;
}

std::vector<ShapeSample> sample_shape(const BeamShape& shape, int n) {
    if (n < 2) throw std::invalid_argument("sample_shape: need at least 2 samples");
    const double total = shape.total_length();
    std::vector<ShapeSample> samples(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = total * i / (n - 1);
        samples[static_cast<std::size_t>(i)] = {x, shape.eval(x)};
    }
    samples.back().x_m = total;
    return samples;
}

void write_curve_csv(const Curve& curve, std::ostream& os) {
    os << "theta_rad,voltage_v,w_eq_n_per_m,u_max_m,iterations,converged\n";
    for (const auto& r : to_records(curve))
        os << fmt17(r.theta_rad) << ',' << fmt17(r.voltage_v) << ',' << fmt17(r.w_eq_n_per_m)
           << ',' << fmt17(r.u_max_m) << ',' << r.iterations << ',' << (r.converged ? 1 : 0)
           << '\n';
}

void write_curve_csv(const Curve& curve, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("cannot open output file: " + path.string());
    write_curve_csv(curve, os);
    if (!os) fail("write failed: " + path.string());
}

void write_shape_csv(std::span<const ShapeSample> samples, std::ostream& os) {
    os << "x_m,u_z_m\n";
    for (const auto& s : samples) os << fmt17(s.x_m) << ',' << fmt17(s.u_z_m) << '\n';
}

void write_shape_csv(std::span<const ShapeSample> samples, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail("cannot open output file: " + path.string());
    write_shape_csv(samples, os);
    if (!os) fail("write failed: " + path.string());
}

}  // namespace mirrorsim
