#pragma once

#include "calkin/parallel.hpp"
#include "calkin/relations.hpp"

namespace calkin {

// Points in the disk on the locus |zeta - z|^k = M (1 - |z|^2), ordered from
// shallow to deep. For k = 1 this is the boundary of a non-tangential approach
// region with vertex zeta; the points sit on the counterclockwise leg
// (arg(zeta - z) = +theta side).
struct test_curve {
    cnum zeta;
    int k = 1;
    double m_param = 1.0;
    std::vector<cnum> points;                      // decreasing 1 - |z|
    std::vector<std::pair<double, double>> polar;  // (depth, s): z = zeta (1-depth) e^{-is}
};

inline test_curve curve_points(cnum zeta, int k, double m_param, int count,
                               std::pair<double, double> depth_range) {
    if (k < 1 || m_param <= 0 || count < 2)
        throw error(errc::parse_error, "curve needs k >= 1, M > 0 and at least two points");
    zeta /= std::abs(zeta);
    double shallow = std::max(depth_range.first, depth_range.second);
    double deep = std::min(depth_range.first, depth_range.second);
    if (deep <= 0 || shallow >= 1)
        throw error(errc::parse_error, "curve depths must lie in (0, 1)");
    test_curve curve{zeta, k, m_param, {}};
    for (int i = 0; i < count; ++i) {
        double depth = shallow * std::pow(deep / shallow, double(i) / double(count - 1));
        double r = 1.0 - depth;
        double target = m_param * depth * (2.0 - depth); // M (1 - r^2), cancellation-free
        // solve |1 - r e^{-is}|^k = M (1 - r^2) for s in (0, pi), with
        // |1 - r e^{-is}|^2 = (1-r)^2 + 4 r sin^2(s/2)
        auto mod_sq = [&](double s) {
            double sn = std::sin(0.5 * s);
            return depth * depth + 4.0 * r * sn * sn;
        };
        auto h = [&](double s) { return 0.5 * double(k) * std::log(mod_sq(s)) - std::log(target); };
        if (h(0.0) >= 0.0 || h(std::numbers::pi) <= 0.0)
            throw error(errc::no_solution_at_depth,
                        "locus has no point at depth " + std::to_string(depth));
        double lo = 0.0, hi = std::numbers::pi;
        for (int it = 0; it < 100; ++it) {
            double mid = 0.5 * (lo + hi);
            (h(mid) < 0.0 ? lo : hi) = mid;
        }
        double s = 0.5 * (lo + hi);
        double residual = std::abs(std::pow(mod_sq(s), 0.5 * k) - target) / target;
        if (residual > 1e-12)
            throw error(errc::no_solution_at_depth, "curve point residual too large");
        curve.points.push_back(zeta * std::polar(r, -s));
        curve.polar.emplace_back(depth, s);
    }
    return curve;
}

// The kernel quadratic form
//   Q(z) = sum_{j,l} conj(c_j) c_l ((1-|z|^2)/(1 - conj(phi_j(z)) phi_l(z)))^beta
//        = || sum conj(c_j) C*_{phi_j} k_z ||^2 / ||k_z||^2,
// evaluated in float; the imaginary part cancels and is dropped.
template <class C>
double kernel_quadratic_form(const std::vector<float_map>& maps, const std::vector<C>& coeffs,
                             double beta, cnum z,
                             std::optional<double> one_minus_sq = std::nullopt) {
    std::size_t n = maps.size();
    std::vector<cnum> vals(n);
    for (std::size_t j = 0; j < n; ++j) vals[j] = maps[j].eval(z);
    // 1 - |z|^2 cancels catastrophically near the boundary; deep curve points
    // supply it in the exact form depth * (2 - depth).
    double one_minus = one_minus_sq ? *one_minus_sq : 1.0 - std::norm(z);
    cnum acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cnum cj = std::conj(scalar_ops<C>::as_complex(coeffs[j]));
        for (std::size_t l = 0; l < n; ++l) {
            cnum cl = scalar_ops<C>::as_complex(coeffs[l]);
            cnum base = one_minus / (1.0 - std::conj(vals[j]) * vals[l]);
            acc += cj * cl * (beta == 1.0 ? base : std::pow(base, beta));
        }
    }
    return acc.real();
}

struct kernel_estimate {
    double value = 0.0;                          // sup over the deepest decade
    bool stabilized = false;                     // <1% variation over that decade
    std::vector<std::pair<double, double>> table; // (depth, estimate)
};

// Essential-norm lower-bound samples along a test curve; the reported value is
// certified only in the limit, so the deepest-decade sup plus a stabilization
// diagnostic is returned rather than a single point.
template <class C>
kernel_estimate kernel_lowerbound_estimate(const combination<C>& comb, const test_curve& curve) {
    std::vector<float_map> maps;
    for (const auto& m : comb.maps) maps.push_back(detail::to_float_any(m));
    kernel_estimate est;
    est.table.resize(curve.points.size());
    parallel_for(curve.points.size(), [&](std::size_t i) {
        cnum z = curve.points[i];
        double depth = curve.polar[i].first;
        est.table[i] = {depth, kernel_quadratic_form(maps, comb.coefficients, comb.space.beta, z,
                                                     depth * (2.0 - depth))};
    });
    double deepest = est.table.back().first;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& [depth, q] : est.table) {
        if (depth > 10.0 * deepest) continue;
        est.value = std::max(est.value, q);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    est.stabilized = hi - lo <= 0.01 * std::max(1e-12, std::abs(hi));
    return est;
}

struct probe_report {
    bool consistent_with_compact = false; // heuristic corroboration, never a proof
    double tolerance = 1e-3;
    std::vector<std::pair<double, double>> radius_max; // (radius, sup of Q over angles)
};

// Scans the kernel form over circles of increasing radius; a compact
// combination must let the sup decay to zero. The angle grid is augmented with
// clusters around every contact point, where the sup lives.
template <class C>
probe_report compactness_probe(const combination<C>& comb, std::vector<double> radii = {},
                               int angle_count = 4096) {
    if (radii.empty()) radii = {0.9, 0.99, 0.999, 0.9999};
    std::vector<float_map> maps;
    for (const auto& m : comb.maps) maps.push_back(detail::to_float_any(m));
    std::vector<double> contact_angles;
    for (const auto& m : comb.maps)
        for (const auto& p : find_contact_points(m).points)
            contact_angles.push_back(detail::angle_in_2pi(scalar_ops<C>::as_complex(p.zeta)));

    probe_report rep;
    for (double r : radii) {
        std::vector<double> angles;
        angles.reserve(static_cast<std::size_t>(angle_count) + contact_angles.size() * 41);
        for (int i = 0; i < angle_count; ++i)
            angles.push_back(2.0 * std::numbers::pi * i / angle_count);
        for (double t : contact_angles) {
            angles.push_back(t);
            for (int e = 0; e < 10; ++e) {
                double off = (1.0 - r) * std::pow(2.0, e);
                angles.push_back(t + off);
                angles.push_back(t - off);
            }
        }
        std::vector<double> vals(angles.size());
        parallel_for(angles.size(), [&](std::size_t i) {
            vals[i] = kernel_quadratic_form(maps, comb.coefficients, comb.space.beta,
                                            std::polar(r, angles[i]));
        });
        double sup = 0.0;
        for (double v : vals) sup = std::max(sup, v);
        rep.radius_max.emplace_back(r, sup);
    }
    rep.consistent_with_compact = rep.radius_max.back().second < rep.tolerance;
    return rep;
}

} // namespace calkin
