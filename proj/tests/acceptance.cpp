// Acceptance suite: end-to-end checks of the solver against independent
// numerical routes, classical closed-form limits, and the shipped reference
// device. Prints one PASS/FAIL line per criterion; exit code is the number of
// failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "mirrorsim/cli.hpp"
#include "mirrorsim/io.hpp"
#include "mirrorsim/solver.hpp"
#include "oracles.hpp"

using namespace mirrorsim;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// 1. dc/dtheta and dc/dz match central differences of line_capacitance to
//    1e-6 relative over >= 100 randomized states, in under a second.
void criterion_derivative_oracle(const DeviceConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    const int n_states = 150;
    for (int i = 0; i < n_states; ++i) {
        CapState s;
        s.h = cfg.gap * (0.5 + unit(rng));
        s.b = s.h * (5.0 + 20.0 * unit(rng));
        s.a = s.b * 0.9 * unit(rng);
        s.epsilon = cfg.material.permittivity;
        s.theta = 0.85 * (s.h / s.b) * unit(rng);
        s.z = 0.8 * (s.h - s.b * s.theta) * unit(rng);
        const auto cap = [&s](double th, double z) {
            CapState q = s;
            q.theta = th;
            q.z = z;
            return line_capacitance(q);
        };
        const double dth = 1e-6 * s.h / s.b;
        const double dz = 1e-6 * s.h;
        const double fd_th = (cap(s.theta + dth, s.z) - cap(s.theta - dth, s.z)) / (2 * dth);
        const double fd_z = (cap(s.theta, s.z + dz) - cap(s.theta, s.z - dz)) / (2 * dz);
        worst = std::max(worst, std::abs(dc_dtheta(s) / fd_th - 1.0));
        worst = std::max(worst, std::abs(dc_dz(s) / fd_z - 1.0));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    criterion(1, "capacitance partials vs finite differences", worst < 1e-6 && seconds < 1.0,
              fmt("max rel err %.3g over 150 states, %.3g s", worst, seconds));
}

// 2. Square-section torsion constant equals the classical series value.
void criterion_torsion_square() {
    const double j = torsion_constant(1.0, 1.0, 1e-12);
    const bool ok = std::abs(j - 0.1406) <= 1e-3;
    criterion(2, "square-section torsion constant", ok, fmt("J/t^4 = %.6f vs 0.1406", j));
}

// 3. Beam solver: clamped-clamped limit at vanishing spring length, and
//    agreement with the finite-difference oracle on random configurations.
void criterion_beam() {
    Material mat{160e9, 65e9, kVacuumPermittivity};
    MirrorGeometry mirror{490e-6, 44e-6, 15e-6, std::nullopt};
    SpringGeometry spring{1e-9 * mirror.length, 1.5e-6, 15e-6};
    SectionProperties props;
    props.i_mirror = mirror.width * std::pow(mirror.thickness, 3) / 12.0;
    props.i_spring = 100.0 * props.i_mirror;  // stiff springs, shrunk out
    props.j_p = props.k_theta = 1.0;
    const double w = 0.35;
    const BeamShape shape = solve_beam(props, mat, spring, mirror, w);
    const double expected =
        w * std::pow(mirror.length, 4) / (384.0 * mat.youngs_modulus * props.i_mirror);
    const double limit_err = std::abs(max_deflection(shape) / expected - 1.0);

    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        Material m{100e9 + 100e9 * unit(rng), 65e9, kVacuumPermittivity};
        SpringGeometry sp{20e-6 + 60e-6 * unit(rng), 1e-6 + 4e-6 * unit(rng),
                          5e-6 + 15e-6 * unit(rng)};
        MirrorGeometry mi{200e-6 + 600e-6 * unit(rng), 20e-6 + 40e-6 * unit(rng),
                          5e-6 + 15e-6 * unit(rng), std::nullopt};
        SectionProperties pr;
        pr.i_spring = sp.width * std::pow(sp.thickness, 3) / 12.0;
        pr.i_mirror = mi.width * std::pow(mi.thickness, 3) / 12.0;
        pr.j_p = pr.k_theta = 1.0;
        const BeamShape closed = solve_beam(pr, m, sp, mi, 1.0);
        const FdBeamSolution fd = fd_beam_oracle(pr, m, sp, mi, 1.0, 801);
        const double peak = max_deflection(closed);
        for (std::size_t i = 0; i < fd.x.size(); ++i)
            worst = std::max(worst, std::abs(fd.u[i] - closed.eval(fd.x[i])) / peak);
    }
    criterion(3, "beam solver limits and finite-difference agreement",
              limit_err < 1e-9 && worst < 1e-3,
              fmt("clamped-clamped rel err %.3g, FD max dev %.3g of peak", limit_err, worst));
}

// 4. Rigid pull-in angle of the full-length a = 0 electrode layout hits the
//    classical fraction of the geometric limit.
void criterion_rigid_pullin(const DeviceConfig& reference) {
    DeviceConfig cfg = reference;
    cfg.electrodes = {{0.0, cfg.mirror.length, 0.0, cfg.mirror.width / 2.0}};
    cfg = validate_config(cfg);
    const SectionProperties props = section_properties(cfg);
    const PullInResult pi = find_pullin(cfg, props, SolverOptions{}, ModelKind::rigid);
    const double ratio = pi.theta_pullin / cfg.theta_geo();
    const bool ok = std::abs(ratio / 0.4404 - 1.0) <= 5e-3;
    criterion(4, "classical rigid pull-in angle ratio", ok,
              fmt("theta_PI/theta_max = %.6f vs 0.4404", ratio));
}

// 5. Bending curve sits on or below the rigid curve, point by point, and its
//    pull-in voltage is strictly lower.
void criterion_model_ordering(const DeviceConfig& cfg, const Curve& rigid, const Curve& bending) {
    bool ordered = bending.points.size() >= 2;
    double max_excess = 0.0;
    for (std::size_t i = 0; i < bending.points.size(); ++i) {
        const double excess = bending.points[i].voltage - rigid.points[i].voltage;
        max_excess = std::max(max_excess, excess);
        if (excess > 1e-9 * rigid.points[i].voltage) ordered = false;
    }
    const SectionProperties props = section_properties(cfg);
    const PullInResult pi_r = find_pullin(cfg, props, SolverOptions{}, ModelKind::rigid);
    const PullInResult pi_b = find_pullin(cfg, props, SolverOptions{}, ModelKind::bending);
    const bool pullin_ordered = pi_b.v_pullin < pi_r.v_pullin;
    criterion(5, "bending model bounded by the rigid model", ordered && pullin_ordered,
              fmt("max pointwise excess %.3g V; V_PI %.4g V (bending) < %.4g V (rigid)",
                  max_excess, pi_b.v_pullin, pi_r.v_pullin));
}

// 6. Every converged point re-satisfies both balance equations to 1e-6, and
//    the converged load does not depend on the starting guess.
void criterion_self_consistency(const DeviceConfig& cfg, const Curve& bending) {
    const SectionProperties props = section_properties(cfg);
    const SolverOptions opts;
    double worst = 0.0;
    int checked = 0;
    for (const auto& pt : bending.points) {
        if (!pt.converged) continue;
        const BeamShape shape =
            solve_beam(props, cfg.material, cfg.spring, cfg.mirror, pt.w_eq);
        const double torque = pt.voltage * pt.voltage / 2.0 *
                              integrate_dc_dtheta(cfg, pt.theta, shape, opts.quadrature);
        worst = std::max(worst, std::abs(torque / (props.k_theta * pt.theta) - 1.0));
        const double load = pt.voltage * pt.voltage / 2.0 *
                            integrate_dc_dz(cfg, pt.theta, shape, opts.quadrature) /
                            cfg.mirror.length;
        if (pt.w_eq > opts.load_floor)
            worst = std::max(worst, std::abs(load / pt.w_eq - 1.0));
        ++checked;
    }

    bool independent = true;
    for (const double frac : {0.25, 0.55}) {
        const double theta = frac * cfg.theta_geo();
        const EquilibriumPoint base = fixed_point(cfg, props, theta, opts);
        SolverOptions seeded = opts;
        seeded.initial_load = 2.0 * base.w_eq;
        const EquilibriumPoint redo = fixed_point(cfg, props, theta, seeded);
        if (std::abs(redo.w_eq - base.w_eq) > 5.0 * opts.load_rel_tol * base.w_eq)
            independent = false;
    }
    criterion(6, "equilibrium self-consistency and guess independence",
              worst < 1e-6 && independent && checked > 0,
              fmt("max balance residual %.3g over %g points", worst, double(checked)));
}

// 7. Small-deflection regime on the reference device: peak deflection at
//    pull-in stays well inside the gap.
void criterion_regime(const DeviceConfig& cfg) {
    const SectionProperties props = section_properties(cfg);
    const PullInResult pi = find_pullin(cfg, props, SolverOptions{}, ModelKind::bending);
    const double fraction = pi.u_max_pullin / cfg.gap;
    criterion(7, "small-deflection regime at pull-in", fraction < 0.15,
              fmt("u_max/gap = %.4f at V_PI = %.4g V", fraction, pi.v_pullin));
}

}  // namespace

int main() {
    const DeviceConfig cfg = load_config(REFERENCE_CONFIG_PATH);
    const SectionProperties props = section_properties(cfg);
    const SolverOptions opts;
    const std::vector<double> grid = opts.theta_grid.build(cfg.theta_geo());
    const Curve rigid = sweep(cfg, props, grid, opts, ModelKind::rigid);

    // The 200-point bending sweep is timed here (criterion 8) and reused by
    // the curve-based criteria below.
    const auto t0 = std::chrono::steady_clock::now();
    const Curve bending = sweep(cfg, props, grid, opts, ModelKind::bending);
    const double sweep_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    criterion_derivative_oracle(cfg);
    criterion_torsion_square();
    criterion_beam();
    criterion_rigid_pullin(cfg);
    criterion_model_ordering(cfg, rigid, bending);
    criterion_self_consistency(cfg, bending);
    criterion_regime(cfg);
    criterion(8, "200-point bending sweep under 3 s", sweep_seconds < 3.0,
              fmt("%.3f s for %g points", sweep_seconds, double(bending.points.size())));

    if (g_failures == 0) std::printf("all acceptance criteria passed\n");
    return g_failures;
}
