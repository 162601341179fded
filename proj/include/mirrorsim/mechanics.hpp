#pragma once

#include <array>
#include <vector>

#include "mirrorsim/geometry.hpp"

namespace mirrorsim {

// Piecewise-polynomial vertical deflection u_z(x) of the spring-mirror-spring
// axis: cubic on the two spring spans, quartic on the mirror span, with
// segment boundaries at x = 0, L_s, L_s + L_m, 2 L_s + L_m (global axis,
// anchors at both ends). Coefficients are stored in the normalized local
// coordinate (x - x0) / len per segment so evaluation stays well scaled for
// any spring/mirror length ratio.
class BeamShape {
public:
    struct Segment {
        double x0 = 0.0;
        double length = 0.0;
        std::array<double, 5> coeffs{};  // cubic segments keep coeffs[4] == 0
    };

    BeamShape() = default;
    BeamShape(std::array<Segment, 3> segments, double w_eq);

    // Undeformed axis (the rigid-mirror limit).
    static BeamShape zero(const SpringGeometry& spring, const MirrorGeometry& mirror);

    // u_z at global x, 0 <= x <= total_length(). Throws std::out_of_range
    // outside the span.
    double eval(double x) const;

    // n-th spatial derivative of u_z at x, n in [0, 4].
    double derivative(double x, int n) const;

    double total_length() const;
    double w_eq() const noexcept { return w_eq_; }
    const std::array<Segment, 3>& segments() const noexcept { return segments_; }

private:
    const Segment& segment_at(double& x) const;

    std::array<Segment, 3> segments_{};
    double w_eq_ = 0.0;
};

// Solves u'''' = 0 on the springs and u'''' = w_eq / (E I_mirror) on the
// mirror with clamped anchors and continuity of u, u', E I u'', E I u''' at
// both junctions. The 12 polynomial coefficients come from one 12x12 linear
// solve (row-equilibrated LU with iterative refinement); the quartic
// particular term w_eq/(24 E I) is fixed analytically. The solution is linear
// in w_eq.
BeamShape solve_beam(const SectionProperties& props, const Material& material,
                     const SpringGeometry& spring, const MirrorGeometry& mirror,
                     double w_eq);

double eval_shape(const BeamShape& shape, double x);

// u_z at the center of the span. The load is symmetric, so this is the
// extremum.
double max_deflection(const BeamShape& shape);

struct FdBeamSolution {
    std::vector<double> x;  // node positions, global axis
    std::vector<double> u;  // deflection at the nodes
};

// Second-order finite-difference solution of the same piecewise ODE/boundary
// value problem, discretized as the mixed system u'' = M/(EI), M'' = w with
// slope/shear interface conditions at the junctions. n_nodes >= 201 is a hint
// for the total node count; each region gets a uniform grid of its own with
// near-equal spacing. Cross-checks solve_beam; also run by the CLI `check`
// command.
FdBeamSolution fd_beam_oracle(const SectionProperties& props, const Material& material,
                              const SpringGeometry& spring, const MirrorGeometry& mirror,
                              double w_eq, int n_nodes);

}  // namespace mirrorsim
