#include "mirrorsim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "mirrorsim/io.hpp"
#include "mirrorsim/solver.hpp"

namespace mirrorsim {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitContact = 4;

struct CommonArgs {
    std::string config_path;
    SolverOptions opts;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "device config JSON file")->required();
    cmd->add_option("--load-tol", args.opts.load_rel_tol, "relative tolerance on the load update");
    cmd->add_option("--max-iter", args.opts.max_iterations, "fixed-point iteration cap");
    cmd->add_option("--relax", args.opts.relaxation, "under-relaxation factor in (0,1]");
    cmd->add_option("--quad-points", args.opts.quadrature.points_per_segment,
                    "Simpson points per electrode segment (odd, >= 3)");
}

ModelKind parse_model(const std::string& name) {
    if (name == "bending") return ModelKind::bending;
    if (name == "rigid") return ModelKind::rigid;
    throw CLI::ValidationError("--model", "must be 'bending' or 'rigid'");
}

double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

int run_sweep(const CommonArgs& args, int points, std::optional<double> theta_max,
              const std::string& model_name, const std::string& out_path) {
    const DeviceConfig config = load_config(args.config_path);
    const SectionProperties props = section_properties(config);

    SolverOptions opts = args.opts;
    opts.theta_grid.points = points;
    opts.theta_grid.theta_max = theta_max;
    const std::vector<double> grid = opts.theta_grid.build(config.theta_geo());

    const Curve curve = sweep(config, props, grid, opts, parse_model(model_name));
    if (out_path.empty()) {
        write_curve_csv(curve, std::cout);
    } else {
        write_curve_csv(curve, std::filesystem::path(out_path));
        std::cout << "wrote " << curve.points.size() << " points to " << out_path << "\n";
    }
    if (curve.truncation_reason)
        std::cerr << "note: sweep truncated after " << curve.points.size()
                  << " points: " << *curve.truncation_reason << "\n";
    return kExitOk;
}

int run_pullin(const CommonArgs& args, const std::string& model_name) {
    const DeviceConfig config = load_config(args.config_path);
    const SectionProperties props = section_properties(config);
    const ModelKind model = parse_model(model_name);

    const PullInResult pi = find_pullin(config, props, args.opts, model);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "model       = %s\n"
                  "V_PI        = %.10g V\n"
                  "theta_PI    = %.10g rad = %.10g deg\n"
                  "u_max_PI    = %.10g m\n"
                  "bracket     = [%.10g, %.10g] rad\n",
                  model == ModelKind::rigid ? "rigid" : "bending", pi.v_pullin, pi.theta_pullin,
                  deg(pi.theta_pullin), pi.u_max_pullin, pi.bracket_lo, pi.bracket_hi);
    std::cout << buf;
    return kExitOk;
}

// theta on the rising branch with V(theta) == target, by bisection.
double invert_voltage(const DeviceConfig& config, const SectionProperties& props,
                      const SolverOptions& opts, double target, double theta_pi) {
    double lo = config.theta_geo() * 1e-12;
    double hi = theta_pi;
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * theta_pi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double v = fixed_point(config, props, mid, opts).voltage;
        (v < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

int run_shape(const CommonArgs& args, std::optional<double> theta, std::optional<double> voltage,
              int samples, const std::string& out_path) {
    const DeviceConfig config = load_config(args.config_path);
    const SectionProperties props = section_properties(config);

    if (theta.has_value() == voltage.has_value())
        throw CLI::ValidationError("shape", "give exactly one of --theta or --voltage");

    double theta_op = 0.0;
    if (theta) {
        theta_op = *theta;
    } else {
        const PullInResult pi = find_pullin(config, props, args.opts, ModelKind::bending);
        if (*voltage > pi.v_pullin) {
            std::cerr << "no static equilibrium: V = " << *voltage << " V exceeds V_PI = "
                      << pi.v_pullin << " V\n";
            return kExitContact;
        }
        theta_op = invert_voltage(config, props, args.opts, *voltage, pi.theta_pullin);
    }

    const EquilibriumPoint point = fixed_point(config, props, theta_op, args.opts);
    if (!point.converged) {
        std::cerr << "fixed point did not converge within " << args.opts.max_iterations
                  << " iterations\n";
        return kExitNoConvergence;
    }

    std::cerr << "theta = " << point.theta << " rad = " << deg(point.theta)
              << " deg, V = " << point.voltage << " V, w_eq = " << point.w_eq
              << " N/m, u_max = " << max_deflection(point.shape) << " m\n";
    const auto shape_samples = sample_shape(point.shape, samples);
    if (out_path.empty()) {
        write_shape_csv(shape_samples, std::cout);
    } else {
        write_shape_csv(shape_samples, std::filesystem::path(out_path));
        std::cout << "wrote " << shape_samples.size() << " samples to " << out_path << "\n";
    }
    return kExitOk;
}

// The built-in numerical cross-checks, runnable against any config.
int run_check(const CommonArgs& args) {
    const DeviceConfig config = load_config(args.config_path);
    const SectionProperties props = section_properties(config);
    bool all_ok = true;
    auto report = [&all_ok](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
        if (!ok) all_ok = false;
    };

    // Capacitance partials vs central differences of line_capacitance.
    {
        std::mt19937 rng(20240817u);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double worst_theta = 0.0, worst_z = 0.0;
        const int n_states = 120;
        for (int i = 0; i < n_states; ++i) {
            CapState s;
            s.h = config.gap;
            s.b = config.max_b() * (0.3 + 0.7 * unit(rng));
            s.a = s.b * 0.8 * unit(rng);
            s.epsilon = config.material.permittivity;
            s.theta = 0.8 * (s.h / s.b) * unit(rng);
            s.z = 0.8 * (s.h - s.b * s.theta) * unit(rng);
            const double dth = 1e-6 * s.h / s.b;
            const double dz = 1e-6 * s.h;
            const auto at = [&s](double th, double z) {
                CapState q = s;
                q.theta = th;
                q.z = z;
                return line_capacitance(q);
            };
            const double fd_th = (at(s.theta + dth, s.z) - at(s.theta - dth, s.z)) / (2 * dth);
            const double fd_z = (at(s.theta, s.z + dz) - at(s.theta, s.z - dz)) / (2 * dz);
            worst_theta = std::max(worst_theta, std::abs(dc_dtheta(s) / fd_th - 1.0));
            worst_z = std::max(worst_z, std::abs(dc_dz(s) / fd_z - 1.0));
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "dc/dtheta vs central difference: max rel err %.3g (%d states)",
                      worst_theta, n_states);
        report(worst_theta < 1e-6, buf);
        std::snprintf(buf, sizeof(buf), "dc/dz vs central difference: max rel err %.3g (%d states)",
                      worst_z, n_states);
        report(worst_z < 1e-6, buf);
    }

    // Closed-form beam vs the finite-difference solution of the same BVP.
    {
        const double w_probe = 1.0;
        const BeamShape shape =
            solve_beam(props, config.material, config.spring, config.mirror, w_probe);
        const FdBeamSolution fd =
            fd_beam_oracle(props, config.material, config.spring, config.mirror, w_probe, 801);
        const double peak = std::abs(max_deflection(shape));
        double worst = 0.0;
        for (std::size_t i = 0; i < fd.x.size(); ++i)
            worst = std::max(worst, std::abs(shape.eval(fd.x[i]) - fd.u[i]));
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "beam closed form vs finite-difference oracle: max dev %.3g of peak",
                      worst / peak);
        report(worst / peak < 1e-3, buf);
    }

    // Quadrature refinement at a mid-range operating point.
    {
        const double theta = 0.5 * config.theta_geo();
        const EquilibriumPoint point = fixed_point(config, props, theta, args.opts);
        QuadratureRule fine;
        fine.points_per_segment = (args.opts.quadrature.points_per_segment - 1) * 10 + 1;
        const double coarse_t = integrate_dc_dtheta(config, theta, point.shape, args.opts.quadrature);
        const double fine_t = integrate_dc_dtheta(config, theta, point.shape, fine);
        const double coarse_z = integrate_dc_dz(config, theta, point.shape, args.opts.quadrature);
        const double fine_z = integrate_dc_dz(config, theta, point.shape, fine);
        const double err_t = std::abs(coarse_t / fine_t - 1.0);
        const double err_z = std::abs(coarse_z / fine_z - 1.0);
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "quadrature refinement (10x): rel change %.3g (dc/dtheta), %.3g (dc/dz)",
                      err_t, err_z);
        report(err_t < 1e-8 && err_z < 1e-8, buf);
    }

    return all_ok ? kExitOk : kExitNoConvergence;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"static electromechanics of an electrostatically actuated torsional micromirror"};
    app.require_subcommand(1);

    CommonArgs sweep_args;
    int sweep_points = 200;
    std::optional<double> sweep_theta_max;
    std::string sweep_model = "bending";
    std::string sweep_out;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "compute a voltage-tilt curve");
    add_common_flags(cmd_sweep, sweep_args);
    cmd_sweep->add_option("--points", sweep_points, "number of theta grid points");
    cmd_sweep->add_option("--theta-max", sweep_theta_max, "upper grid angle in rad");
    cmd_sweep->add_option("--model", sweep_model, "bending|rigid");
    cmd_sweep->add_option("--out", sweep_out, "output CSV path (default: stdout)");

    CommonArgs pullin_args;
    std::string pullin_model = "bending";
    CLI::App* cmd_pullin = app.add_subcommand("pullin", "locate the pull-in point");
    add_common_flags(cmd_pullin, pullin_args);
    cmd_pullin->add_option("--model", pullin_model, "bending|rigid");

    CommonArgs shape_args;
    std::optional<double> shape_theta, shape_voltage;
    int shape_samples = 401;
    std::string shape_out;
    CLI::App* cmd_shape = app.add_subcommand("shape", "export the deformed axis");
    add_common_flags(cmd_shape, shape_args);
    cmd_shape->add_option("--theta", shape_theta, "operating tilt in rad");
    cmd_shape->add_option("--voltage", shape_voltage, "operating voltage in V");
    cmd_shape->add_option("--samples", shape_samples, "number of x samples");
    cmd_shape->add_option("--out", shape_out, "output CSV path (default: stdout)");

    CommonArgs check_args;
    CLI::App* cmd_check = app.add_subcommand("check", "run the built-in numerical cross-checks");
    add_common_flags(cmd_check, check_args);

    try {
        app.parse(argc, argv);
        if (cmd_sweep->parsed())
            return run_sweep(sweep_args, sweep_points, sweep_theta_max, sweep_model, sweep_out);
        if (cmd_pullin->parsed()) return run_pullin(pullin_args, pullin_model);
        if (cmd_shape->parsed())
            return run_shape(shape_args, shape_theta, shape_voltage, shape_samples, shape_out);
        if (cmd_check->parsed()) return run_check(check_args);
        return kExitConfig;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ContactLimitedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContact;
    } catch (const ContactError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitContact;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
}

}  // namespace mirrorsim
