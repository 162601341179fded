#include "mirrorsim/mechanics.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <stdexcept>

namespace mirrorsim {

namespace {

// d^n/ds^n of s^k evaluated at s, i.e. k!/(k-n)! * s^(k-n); zero for n > k.
double monomial_derivative(int k, int n, double s) {
    if (n > k) return 0.0;
    double c = 1.0;
    for (int j = 0; j < n; ++j) c *= static_cast<double>(k - j);
    return c * std::pow(s, k - n);
}

}  // namespace

BeamShape::BeamShape(std::array<Segment, 3> segments, double w_eq)
    : segments_(segments), w_eq_(w_eq) {}

BeamShape BeamShape::zero(const SpringGeometry& spring, const MirrorGeometry& mirror) {
    std::array<Segment, 3> segs{};
    segs[0] = {0.0, spring.length, {}};
    segs[1] = {spring.length, mirror.length, {}};
    segs[2] = {spring.length + mirror.length, spring.length, {}};
    return BeamShape(segs, 0.0);
}

double BeamShape::total_length() const { return segments_[2].x0 + segments_[2].length; }

const BeamShape::Segment& BeamShape::segment_at(double& x) const {
    const double total = total_length();
    const double slack = 1e-9 * total;
    if (!(x >= -slack) || !(x <= total + slack))
        throw std::out_of_range("BeamShape: x outside [0, total_length]");
    if (x < 0.0) x = 0.0;
    if (x > total) x = total;
    if (x < segments_[1].x0) return segments_[0];
    if (x < segments_[2].x0) return segments_[1];
    return segments_[2];
}

double BeamShape::eval(double x) const {
    const Segment& seg = segment_at(x);
    const double t = (x - seg.x0) / seg.length;
    double acc = 0.0;
    for (int k = 4; k >= 0; --k) acc = acc * t + seg.coeffs[static_cast<std::size_t>(k)];
    return acc;
}

double BeamShape::derivative(double x, int n) const {
    if (n < 0 || n > 4) throw std::invalid_argument("BeamShape::derivative: order must be in [0, 4]");
    const Segment& seg = segment_at(x);
    const double t = (x - seg.x0) / seg.length;
    double acc = 0.0;
    for (int k = n; k <= 4; ++k)
        acc += seg.coeffs[static_cast<std::size_t>(k)] * monomial_derivative(k, n, t);
    return acc / std::pow(seg.length, n);
}

BeamShape solve_beam(const SectionProperties& props, const Material& material,
                     const SpringGeometry& spring, const MirrorGeometry& mirror,
                     double w_eq) {
    if (!std::isfinite(w_eq)) throw std::invalid_argument("solve_beam: w_eq must be finite");

    const double ls = spring.length;
    const double lm = mirror.length;
    const double ei_s = material.youngs_modulus * props.i_spring;
    const double ei_m = material.youngs_modulus * props.i_mirror;
    // Particular quartic coefficient in the normalized mirror coordinate:
    // u_p(sigma) = Q sigma^4 with Q = w L_m^4 / (24 E I_m).
    const double q = w_eq * std::pow(lm, 4) / (24.0 * ei_m);

    // Unknowns: alpha0..3 (spring 1, tau = x/ls), beta0..3 (mirror,
    // sigma = (x - ls)/lm), gamma0..3 (spring 2, tau = (x - ls - lm)/ls).
    Eigen::Matrix<double, 12, 12> A = Eigen::Matrix<double, 12, 12>::Zero();
    Eigen::Matrix<double, 12, 1> rhs = Eigen::Matrix<double, 12, 1>::Zero();

    auto fill_poly = [&A](int row, int base, int n, double s, double len, double scale) {
        for (int k = 0; k < 4; ++k)
            A(row, base + k) += scale * monomial_derivative(k, n, s) / std::pow(len, n);
    };
    auto particular = [&](int n, double s) { return q * monomial_derivative(4, n, s) / std::pow(lm, n); };

    int row = 0;
    // Clamped anchors: u = u' = 0 at both ends.
    fill_poly(row++, 0, 0, 0.0, ls, 1.0);
    fill_poly(row++, 0, 1, 0.0, ls, 1.0);
    fill_poly(row++, 8, 0, 1.0, ls, 1.0);
    fill_poly(row++, 8, 1, 1.0, ls, 1.0);
    // Junction spring 1 / mirror: u, u', EI u'', EI u''' continuous. The
    // particular term and its first three derivatives vanish at sigma = 0.
    for (int n = 0; n < 4; ++n) {
        const double fl = n < 2 ? 1.0 : ei_s;
        const double fr = n < 2 ? 1.0 : ei_m;
        fill_poly(row, 0, n, 1.0, ls, fl);
        fill_poly(row, 4, n, 0.0, lm, -fr);
        rhs(row) = fr * particular(n, 0.0);
        ++row;
    }
    // Junction mirror / spring 2.
    for (int n = 0; n < 4; ++n) {
        const double fl = n < 2 ? 1.0 : ei_m;
        const double fr = n < 2 ? 1.0 : ei_s;
        fill_poly(row, 4, n, 1.0, lm, fl);
        fill_poly(row, 8, n, 0.0, ls, -fr);
        rhs(row) = -fl * particular(n, 1.0);
        ++row;
    }

    // Row equilibration keeps the pivoting honest when ls and lm differ by
    // many orders of magnitude.
    for (int i = 0; i < 12; ++i) {
        const double m = A.row(i).cwiseAbs().maxCoeff();
        if (m > 0.0) {
            A.row(i) /= m;
            rhs(i) /= m;
        }
    }

    const auto lu = A.partialPivLu();
    Eigen::Matrix<double, 12, 1> x = lu.solve(rhs);
    // Two rounds of iterative refinement with a long double residual recover
    // full double accuracy even at extreme spring/mirror length ratios.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::Matrix<double, 12, 1> r;
        for (int i = 0; i < 12; ++i) {
            long double acc = static_cast<long double>(rhs(i));
            for (int j = 0; j < 12; ++j)
                acc -= static_cast<long double>(A(i, j)) * static_cast<long double>(x(j));
            r(i) = static_cast<double>(acc);
        }
        x += lu.solve(r);
    }
    if (!x.allFinite()) throw SolverError("solve_beam: singular junction system");

    std::array<BeamShape::Segment, 3> segs{};
    segs[0] = {0.0, ls, {x(0), x(1), x(2), x(3), 0.0}};
    segs[1] = {ls, lm, {x(4), x(5), x(6), x(7), q}};
    segs[2] = {ls + lm, ls, {x(8), x(9), x(10), x(11), 0.0}};
    return BeamShape(segs, w_eq);
}

double eval_shape(const BeamShape& shape, double x) { return shape.eval(x); }

double max_deflection(const BeamShape& shape) { return shape.eval(shape.total_length() / 2.0); }

FdBeamSolution fd_beam_oracle(const SectionProperties& props, const Material& material,
                              const SpringGeometry& spring, const MirrorGeometry& mirror,
                              double w_eq, int n_nodes) {
    if (n_nodes < 201) throw std::invalid_argument("fd_beam_oracle: n_nodes must be >= 201");

    const double ls = spring.length;
    const double lm = mirror.length;
    const double total = 2.0 * ls + lm;
    const double ei_s = material.youngs_modulus * props.i_spring;
    const double ei_m = material.youngs_modulus * props.i_mirror;

    // Near-equal spacing across regions; at least a handful of intervals per
    // region so the one-sided junction stencils have room.
    const int intervals = n_nodes - 1;
    int n_s = static_cast<int>(std::llround(intervals * ls / total));
    n_s = std::max(n_s, 4);
    int n_m = intervals - 2 * n_s;
    if (n_m < 8) {
        n_s = std::max(4, (intervals - 8) / 2);
        n_m = intervals - 2 * n_s;
        if (n_m < 8) throw std::invalid_argument("fd_beam_oracle: n_nodes too small for the layout");
    }
    const double h_s = ls / n_s;
    const double h_m = lm / n_m;
    const int j1 = n_s;          // spring 1 / mirror junction node
    const int j2 = n_s + n_m;    // mirror / spring 2 junction node
    const int last = 2 * n_s + n_m;

    const auto iu = [](int i) { return 2 * i; };
    const auto im = [](int i) { return 2 * i + 1; };

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(12 * (last + 1)));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * (last + 1));
    int row = 0;
    auto add = [&trips](int r, int c, double v) { trips.emplace_back(r, c, v); };

    // Clamped left anchor: u = 0, one-sided second-order u' = 0.
    add(row, iu(0), 1.0);
    ++row;
    add(row, iu(0), -3.0);
    add(row, iu(1), 4.0);
    add(row, iu(2), -1.0);
    ++row;

    for (int i = 1; i < last; ++i) {
        if (i == j1 || i == j2) {
            const double hl = (i == j1) ? h_s : h_m;
            const double hr = (i == j1) ? h_m : h_s;
            // Slope continuity: backward difference == forward difference.
            add(row, iu(i), 3.0 / (2.0 * hl) + 3.0 / (2.0 * hr));
            add(row, iu(i - 1), -4.0 / (2.0 * hl));
            add(row, iu(i - 2), 1.0 / (2.0 * hl));
            add(row, iu(i + 1), -4.0 / (2.0 * hr));
            add(row, iu(i + 2), 1.0 / (2.0 * hr));
            ++row;
            // Shear continuity, same stencil on the moment M.
            add(row, im(i), 3.0 / (2.0 * hl) + 3.0 / (2.0 * hr));
            add(row, im(i - 1), -4.0 / (2.0 * hl));
            add(row, im(i - 2), 1.0 / (2.0 * hl));
            add(row, im(i + 1), -4.0 / (2.0 * hr));
            add(row, im(i + 2), 1.0 / (2.0 * hr));
            ++row;
        } else {
            const bool on_mirror = i > j1 && i < j2;
            const double h = on_mirror ? h_m : h_s;
            const double ei = on_mirror ? ei_m : ei_s;
            const double inv_h2 = 1.0 / (h * h);
            // u'' = M / EI
            add(row, iu(i - 1), inv_h2);
            add(row, iu(i), -2.0 * inv_h2);
            add(row, iu(i + 1), inv_h2);
            add(row, im(i), -1.0 / ei);
            ++row;
            // M'' = w (w = 0 on the springs)
            add(row, im(i - 1), inv_h2);
            add(row, im(i), -2.0 * inv_h2);
            add(row, im(i + 1), inv_h2);
            rhs(row) = on_mirror ? w_eq : 0.0;
            ++row;
        }
    }

    // Clamped right anchor.
    add(row, iu(last), 1.0);
    ++row;
    add(row, iu(last), 3.0);
    add(row, iu(last - 1), -4.0);
    add(row, iu(last - 2), 1.0);
    ++row;

    Eigen::SparseMatrix<double> A(2 * (last + 1), 2 * (last + 1));
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw SolverError("fd_beam_oracle: singular matrix");
    const Eigen::VectorXd sol = lu.solve(rhs);

    FdBeamSolution out;
    out.x.resize(static_cast<std::size_t>(last + 1));
    out.u.resize(static_cast<std::size_t>(last + 1));
    for (int i = 0; i <= last; ++i) {
        double xi;
        if (i <= j1) xi = i * h_s;
        else if (i <= j2) xi = ls + (i - j1) * h_m;
        else xi = ls + lm + (i - j2) * h_s;
        out.x[static_cast<std::size_t>(i)] = xi;
        out.u[static_cast<std::size_t>(i)] = sol(iu(i));
    }
    return out;
}

}  // namespace mirrorsim
