#pragma once

#include "calkin/curves.hpp"
#include "calkin/finite_section.hpp"

namespace calkin {

// Numeric scan of rho = |(phi-psi)/(1-conj(phi)psi)| over the circle: a
// uniform grid plus geometric clusters around every contact point of either
// map (that is where rho -> 1 when first-order data mismatch).
template <class C>
double rho_boundary_sup(const self_map<C>& phi, const self_map<C>& psi) {
    float_map fp = detail::to_float_any(phi), fq = detail::to_float_any(psi);
    std::vector<double> angles;
    const int uniform = 2048;
    for (int i = 0; i < uniform; ++i)
        angles.push_back(2.0 * std::numbers::pi * (i + 0.5) / uniform);
    // Clusters stop at 1e-5: closer to a shared contact point both values are
    // within rounding of the same boundary point and the quotient is 0/0.
    for (const self_map<C>* m : {&phi, &psi}) {
        for (const auto& p : find_contact_points(*m).points) {
            double t = detail::angle_in_2pi(scalar_ops<C>::as_complex(p.zeta));
            for (int e = 1; e <= 5; ++e) {
                double off = std::pow(10.0, -e);
                angles.push_back(t + off);
                angles.push_back(t - off);
            }
        }
    }
    std::vector<double> vals(angles.size(), 0.0);
    parallel_for(angles.size(), [&](std::size_t i) {
        cnum z = std::polar(1.0, angles[i]);
        try {
            vals[i] = pseudo_hyperbolic_disk(fp.eval(z), fq.eval(z));
        } catch (const error&) {
            // indeterminate 0/0 sample; the neighbors carry the information
        }
    });
    double sup = 0.0;
    for (double v : vals) sup = std::max(sup, v);
    return sup;
}

// Linear interpolant phi_t = t phi + (1-t) psi as a single rational map:
// (t p1 q2 + (1-t) p2 q1) / (q1 q2).
inline float_map segment_map(const float_map& phi, const float_map& psi, double t) {
    auto [p1, q1] = phi.fraction();
    auto [p2, q2] = psi.fraction();
    std::vector<cnum> num_a = poly_mul(p1, q2), num_b = poly_mul(p2, q1);
    std::size_t len = std::max(num_a.size(), num_b.size());
    std::vector<cnum> num(len, 0.0);
    for (std::size_t k = 0; k < num_a.size(); ++k) num[k] += t * num_a[k];
    for (std::size_t k = 0; k < num_b.size(); ++k) num[k] += (1.0 - t) * num_b[k];
    return float_map::rational(std::move(num), poly_mul(q1, q2));
}

struct path_probe_row {
    double s = 0.0, r = 0.0;
    double section_norm = 0.0; // ||C_{phi_s} - C_{phi_r}||_N
    double ratio = 0.0;        // section_norm / |s - r|
};

struct path_probe_report {
    int n = 0;
    std::vector<path_probe_row> rows;
    double fitted_ratio = 0.0; // max over the partition (the B-hat estimate)
    double rho_sup = 0.0;
};

// Finite-section Lipschitz ratios along the segment from psi to phi. A bounded
// fitted ratio across an N-ladder corroborates the same-component criterion;
// the precondition is the boundary scan keeping rho away from one.
template <class C>
path_probe_report path_lipschitz_probe(const self_map<C>& phi, const self_map<C>& psi,
                                       std::vector<double> partition, int n) {
    if (partition.size() < 2)
        throw error(errc::parse_error, "partition needs at least two parameter values");
    std::sort(partition.begin(), partition.end());
    if (partition.front() < 0.0 || partition.back() > 1.0)
        throw error(errc::parse_error, "partition values must lie in [0, 1]");

    path_probe_report rep;
    rep.n = n;
    rep.rho_sup = rho_boundary_sup(phi, psi);
    if (rep.rho_sup > 1.0 - 1e-3)
        throw error(errc::rho_not_bounded_away_from_one,
                    "boundary scan reached rho = " + std::to_string(rep.rho_sup));

    float_map fp = flattened(detail::to_float_any(phi));
    float_map fq = flattened(detail::to_float_any(psi));
    std::vector<float_map> nodes;
    for (double t : partition) {
        float_map mt = segment_map(fp, fq, t);
        validation_report v = validate_self_map(mt);
        if (!v.passed())
            throw error(errc::not_self_map, "segment map failed validation at t = " +
                                                std::to_string(t));
        nodes.push_back(std::move(mt));
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        path_probe_row row;
        row.r = partition[i];
        row.s = partition[i + 1];
        combination<cnum> diff({nodes[i + 1], nodes[i]}, {cnum(1.0), cnum(-1.0)});
        row.section_norm = operator_norm_estimate(finite_section(diff, n));
        row.ratio = row.section_norm / (row.s - row.r);
        rep.fitted_ratio = std::max(rep.fitted_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace calkin
