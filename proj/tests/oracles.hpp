// Test-side numerical oracles. Everything here is deliberately independent of
// the library's own evaluation paths: plain quadrature, finite differences,
// and a relaxation solve of the torsion Poisson problem.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

// Composite Simpson of f over [a, b], refined until two successive halvings
// agree to rel_tol.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12) {
    auto simpson = [&](int n) {
        const double h = (b - a) / n;
        double acc = f(a) + f(b);
        for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    double prev = simpson(64);
    for (int n = 128; n <= (1 << 22); n *= 2) {
        const double cur = simpson(n);
        if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

inline double central_difference(const std::function<double(double)>& f, double x, double step) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

// Torsion constant of a w-by-t rectangle from the Prandtl stress function:
// solve lap(phi) = -2 with phi = 0 on the boundary (SOR on an nx-by-ny grid),
// then J = 2 * integral of phi.
inline double poisson_torsion_constant(double w, double t, int nx = 96, int ny = 96) {
    const double hx = w / nx;
    const double hy = t / ny;
    const double cx = 1.0 / (hx * hx);
    const double cy = 1.0 / (hy * hy);
    const double diag = 2.0 * (cx + cy);
    std::vector<double> phi(static_cast<std::size_t>((nx + 1) * (ny + 1)), 0.0);
    const auto at = [&phi, nx](int i, int j) -> double& {
        return phi[static_cast<std::size_t>(j * (nx + 1) + i)];
    };
    const double omega = 2.0 / (1.0 + std::sin(std::numbers::pi / std::max(nx, ny)));
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double max_change = 0.0;
        for (int j = 1; j < ny; ++j)
            for (int i = 1; i < nx; ++i) {
                const double gs = (cx * (at(i - 1, j) + at(i + 1, j)) +
                                   cy * (at(i, j - 1) + at(i, j + 1)) + 2.0) / diag;
                const double next = at(i, j) + omega * (gs - at(i, j));
                max_change = std::max(max_change, std::abs(next - at(i, j)));
                at(i, j) = next;
            }
        if (max_change < 1e-14 * w * t) break;
    }
    double sum = 0.0;
    for (int j = 1; j < ny; ++j)
        for (int i = 1; i < nx; ++i) sum += at(i, j);
    return 2.0 * sum * hx * hy;
}

// Midspan deflection of the clamped spring-mirror-spring beam under a uniform
// load w on the mirror span, from symbolic elimination of the twelve
// boundary/junction conditions.
inline double midspan_deflection(double ls, double lm, double ei_s, double ei_m, double w) {
    const double num =
        lm * w *
        (32.0 * ei_m * ei_m * std::pow(ls, 4) + 10.0 * ei_s * ei_m * std::pow(lm, 3) * ls +
         40.0 * ei_s * ei_m * lm * lm * ls * ls + 64.0 * ei_s * ei_m * lm * std::pow(ls, 3) +
         ei_s * ei_s * std::pow(lm, 4));
    return num / (384.0 * ei_m * ei_s * (2.0 * ei_m * ls + ei_s * lm));
}

// High-precision reference constants.
inline constexpr double kSquareTorsionRatio = 0.140577014955155349;  // J / a^4
inline constexpr double kRigidPullInRatio = 0.440423087745382060;    // theta_PI / theta_max, a = 0
inline constexpr double kTwoLnTwo = 1.3862943611198906;

}  // namespace oracles
