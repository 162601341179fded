#include "mirrorsim/electrostatics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mirrorsim {

namespace {

// Residual gaps at the two electrode edges; throws on contact.
void require_open_gaps(const CapState& s) {
    const double gap_a = s.h - s.a * s.theta - s.z;
    const double gap_b = s.h - s.b * s.theta - s.z;
    const double worst = std::min(gap_a, gap_b);
    if (!(worst > 0.0)) throw ContactError(worst);
}

}  // namespace

namespace detail {

double branch_parameter(const CapState& s) {
    const double hz = s.h - s.z;
    if (!(hz > 0.0)) return std::numeric_limits<double>::infinity();
    return s.theta * std::max(std::abs(s.a), std::abs(s.b)) / hz;
}

double line_capacitance_exact(const CapState& s) {
    const double hz = s.h - s.z;
    const double gap_b = hz - s.b * s.theta;
    // ln((h - a th - z)/(h - b th - z)) = log1p((b - a) th / gap_b), accurate
    // for small tilts.
    return s.epsilon / s.theta * std::log1p((s.b - s.a) * s.theta / gap_b);
}

double line_capacitance_series(const CapState& s) {
    const double hz = s.h - s.z;
    // c = eps * sum_{k>=0} (b^(k+1) - a^(k+1)) / ((k+1) hz^(k+1)) * theta^k,
    // truncated at theta^4.
    double acc = 0.0;
    double pa = s.a / hz, pb = s.b / hz;
    double qa = pa, qb = pb, thk = 1.0;
    for (int k = 0; k <= 4; ++k) {
        acc += (qb - qa) / (k + 1) * thk;
        qa *= pa;
        qb *= pb;
        thk *= s.theta;
    }
    return s.epsilon * acc;
}

double dc_dtheta_exact(const CapState& s) {
    const double hz = s.h - s.z;
    const double gap_a = hz - s.a * s.theta;
    const double gap_b = hz - s.b * s.theta;
    // hz/gap_b - hz/gap_a computed as one fraction; the log via log1p. The
    // two still cancel at O(theta^2), which is why the series branch exists.
    const double log_term = std::log1p(-(s.b - s.a) * s.theta / gap_a);
    const double frac_term = hz * (s.b - s.a) * s.theta / (gap_a * gap_b);
    return s.epsilon / (s.theta * s.theta) * (log_term + frac_term);
}

double dc_dtheta_series(const CapState& s) {
    const double hz = s.h - s.z;
    // d/dtheta of the capacitance series:
    // eps * sum_{k>=1} k (b^(k+1) - a^(k+1)) / ((k+1) hz^(k+1)) * theta^(k-1),
    // truncated at theta^4.
    double acc = 0.0;
    double pa = s.a / hz, pb = s.b / hz;
    double qa = pa * pa, qb = pb * pb, thk = 1.0;
    for (int k = 1; k <= 5; ++k) {
        acc += k * (qb - qa) / (k + 1) * thk;
        qa *= pa;
        qb *= pb;
        thk *= s.theta;
    }
    return s.epsilon * acc;
}

}  // namespace detail

double line_capacitance(const CapState& s) {
    require_open_gaps(s);
    const double u = detail::branch_parameter(s);
    if (std::abs(u) < detail::kSeriesSwitch) return detail::line_capacitance_series(s);
    return detail::line_capacitance_exact(s);
}

double dc_dtheta(const CapState& s) {
    require_open_gaps(s);
    const double u = detail::branch_parameter(s);
    if (std::abs(u) < detail::kSeriesSwitch) return detail::dc_dtheta_series(s);
    return detail::dc_dtheta_exact(s);
}

double dc_dz(const CapState& s) {
    require_open_gaps(s);
    const double gap_a = s.h - s.a * s.theta - s.z;
    const double gap_b = s.h - s.b * s.theta - s.z;
    return s.epsilon * (s.b - s.a) / (gap_a * gap_b);
}

namespace {

template <typename PointFn>
double simpson_over_segments(const DeviceConfig& config, double theta, const BeamShape& shape,
                             const QuadratureRule& rule, PointFn&& point_value) {
    if (rule.points_per_segment < 3 || rule.points_per_segment % 2 == 0)
        throw std::invalid_argument("QuadratureRule: points_per_segment must be odd and >= 3");

    const double ls = config.spring.length;
    double total = 0.0;
    for (const auto& seg : config.electrodes) {
        const int n = rule.points_per_segment;
        const double step = (seg.x_end - seg.x_start) / (n - 1);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x_local = seg.x_start + i * step;
            const double x_global = ls + x_local;
            const double z = shape.eval(x_global);
            const double gap_a = config.gap - seg.a * theta - z;
            const double gap_b = config.gap - seg.b * theta - z;
            const double worst = std::min(gap_a, gap_b);
            if (!(worst > 0.0)) throw ContactError(worst, x_global);
            const CapState state{theta, z, seg.a, seg.b, config.gap, config.material.permittivity};
            const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * point_value(state);
        }
        total += acc * step / 3.0;
    }
    return total;
}

}  // namespace

double integrate_dc_dtheta(const DeviceConfig& config, double theta, const BeamShape& shape,
                           const QuadratureRule& rule) {
    return simpson_over_segments(config, theta, shape, rule,
                                 [](const CapState& s) { return dc_dtheta(s); });
}

double integrate_dc_dz(const DeviceConfig& config, double theta, const BeamShape& shape,
                       const QuadratureRule& rule) {
    return simpson_over_segments(config, theta, shape, rule,
                                 [](const CapState& s) { return dc_dz(s); });
}

}  // namespace mirrorsim
