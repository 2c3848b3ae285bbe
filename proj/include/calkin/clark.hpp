#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "calkin/osculating.hpp"

namespace calkin {

// beta >= 1: beta = 1 is the Hardy space, beta > 1 the weighted Bergman space
// with kernel (1 - conj(w) z)^{-beta}.
struct space_spec {
    double beta = 1.0;

    space_spec() = default;
    explicit space_spec(double b) : beta(b) {
        if (!(b >= 1.0)) throw error(errc::parse_error, "space parameter beta must be >= 1");
    }
    bool is_hardy() const { return beta == 1.0; }
};

// Atoms of the singular part of the Clark measure at alpha: for a map with
// finitely many contact points the singular part is pure point, a mass
// 1/|phi'(zeta)| at every zeta with phi(zeta) = alpha.
template <class C>
struct singular_clark_measure {
    C alpha;
    std::vector<std::pair<C, typename scalar_ops<C>::real_type>> atoms;

    typename scalar_ops<C>::real_type total_mass() const {
        typename scalar_ops<C>::real_type t(0);
        for (const auto& [zeta, mass] : atoms) t = t + mass;
        return t;
    }
};

template <class C>
void require_class_s(const contact_set<C>& cs) {
    if (!cs.map_class.in_s)
        throw error(errc::map_not_in_s, "map is not in the admissible class");
}

template <class C>
singular_clark_measure<C> singular_clark(const contact_set<C>& cs, const C& alpha) {
    require_class_s(cs);
    singular_clark_measure<C> mu;
    mu.alpha = alpha;
    for (const auto& p : cs.points) {
        match m = scalar_ops<C>::compare(p.boundary_value(), alpha);
        if (m == match::indeterminate)
            throw error(errc::indeterminate_data_match,
                        "boundary value matches alpha only borderline");
        if (m == match::equal) {
            typename scalar_ops<C>::real_type one(1);
            mu.atoms.emplace_back(p.zeta, one / p.abs_derivative);
        }
    }
    return mu;
}

template <class C>
singular_clark_measure<C> singular_clark(const self_map<C>& m, const C& alpha) {
    return singular_clark(find_contact_points(m), alpha);
}

namespace detail {

// Adaptive bisected trapezoid for 2pi-periodic integrands; panels where the
// trapezoid value is unstable (or the integrand spikes past 10x its median)
// get split. Nodes are offset so they cannot land exactly on a contact angle.
inline double adaptive_circle_quadrature(const std::function<double(double)>& f, double tol) {
    const int n0 = 1024;
    const double offset = 1e-7 * std::numbers::pi; // dodge removable 0/0 nodes
    struct panel {
        double a, b, fa, fb;
        int depth;
    };
    std::vector<double> probe;
    probe.reserve(n0);
    std::vector<panel> stack;
    double prev_theta = offset, prev_val = f(offset);
    for (int k = 1; k <= n0; ++k) {
        double theta = offset + 2.0 * std::numbers::pi * k / n0;
        double val = f(theta);
        stack.push_back({prev_theta, theta, prev_val, val, 0});
        probe.push_back(std::abs(val));
        prev_theta = theta;
        prev_val = val;
    }
    std::nth_element(probe.begin(), probe.begin() + n0 / 2, probe.end());
    double median = std::max(probe[n0 / 2], 1e-300);

    // Panels narrower than this sit at the rounding floor of the integrand
    // (cancellation in 1 - |phi|^2 near a contact); they are accepted and
    // their discrepancy charged against the budget instead of split forever.
    const double min_width = 1e-8;
    double total = 0.0, slack = 0.0;
    while (!stack.empty()) {
        panel p = stack.back();
        stack.pop_back();
        double mid = 0.5 * (p.a + p.b);
        double fm = f(mid);
        double whole = 0.5 * (p.fa + p.fb) * (p.b - p.a);
        double split = 0.25 * (p.fa + fm) * (p.b - p.a) + 0.25 * (fm + p.fb) * (p.b - p.a);
        bool spiky = std::max({std::abs(p.fa), std::abs(fm), std::abs(p.fb)}) > 10.0 * median;
        double local_tol = tol * (p.b - p.a) / (2.0 * std::numbers::pi);
        bool unconverged = std::abs(whole - split) > local_tol || (spiky && p.depth < 6);
        if (unconverged && p.depth < 24 && p.b - p.a > min_width) {
            stack.push_back({p.a, mid, p.fa, fm, p.depth + 1});
            stack.push_back({mid, p.b, fm, p.fb, p.depth + 1});
            continue;
        }
        if (unconverged) slack += std::abs(whole - split);
        total += split;
    }
    if (slack > 50.0 * tol)
        throw error(errc::quadrature_failure,
                    "circle quadrature accumulated discrepancy " + std::to_string(slack));
    return total;
}

} // namespace detail

struct clark_probe_result {
    double residual = 0.0;
    double herglotz_lhs = 0.0;   // Re((alpha + phi(z)) / (alpha - phi(z)))
    double atomic_part = 0.0;    // sum of P_z(zeta) * mass over the atoms
    double ac_part = 0.0;        // quadrature of P_z (1-|phi|^2)/|alpha-phi|^2
    double poisson_check = 0.0;  // quadrature of P_z alone; should be 1
};

// Certifies the computed measure: the Herglotz integral of the Poisson kernel
// must equal atomic part + absolutely continuous part.
template <class C>
clark_probe_result clark_radial_probe(const self_map<C>& m, const contact_set<C>& cs,
                                      const C& alpha, cnum z) {
    if (std::abs(z) >= 1.0)
        throw error(errc::parse_error, "probe point must be interior", z);
    singular_clark_measure<C> mu = singular_clark(cs, alpha);
    float_map fm = detail::to_float_any(m);
    cnum af = scalar_ops<C>::as_complex(alpha);
    af /= std::abs(af);

    clark_probe_result r;
    cnum phi_z = fm.eval(z);
    r.herglotz_lhs = std::real((af + phi_z) / (af - phi_z));
    auto poisson = [&](cnum w) { return (1.0 - std::norm(z)) / std::norm(w - z); };
    for (const auto& [zeta, mass] : mu.atoms)
        r.atomic_part += poisson(scalar_ops<C>::as_complex(zeta)) * scalar_ops<C>::as_double(mass);
    r.ac_part = detail::adaptive_circle_quadrature(
        [&](double t) {
            cnum w = std::polar(1.0, t);
            cnum v = fm.eval(w);
            double dens = (1.0 - std::norm(v)) / std::norm(af - v);
            return poisson(w) * dens / (2.0 * std::numbers::pi);
        },
        1e-9);
    r.poisson_check = detail::adaptive_circle_quadrature(
        [&](double t) { return poisson(std::polar(1.0, t)) / (2.0 * std::numbers::pi); }, 1e-9);
    if (std::abs(r.poisson_check - 1.0) > 1e-8)
        throw error(errc::quadrature_failure, "Poisson kernel normalization check failed");
    r.residual = std::abs(r.herglotz_lhs - (r.atomic_part + r.ac_part));
    return r;
}

template <class C>
clark_probe_result clark_radial_probe(const self_map<C>& m, const C& alpha, cnum z) {
    return clark_radial_probe(m, find_contact_points(m), alpha, z);
}

struct essential_norm_result {
    std::optional<double> exact;  // ||C_phi||_e^2, only for beta = 1
    std::optional<rational> exact_rational;
    double lower_bound = 0.0;     // max_zeta |phi'(zeta)|^{-beta}
};

// Essential norm squared of a single composition operator. For beta = 1 the
// value is exact: sup over alpha of the singular Clark mass. For beta > 1
// only the kernel lower bound is reported.
template <class C>
essential_norm_result essential_norm_composition(const contact_set<C>& cs,
                                                 const space_spec& space) {
    require_class_s(cs);
    essential_norm_result r;
    double lb = 0.0;
    for (const auto& p : cs.points)
        lb = std::max(lb, std::pow(scalar_ops<C>::as_double(p.abs_derivative), -space.beta));
    r.lower_bound = lb;
    if (!space.is_hardy()) return r;

    // group atoms over common alpha = phi(zeta) and take the largest fiber mass
    if constexpr (is_exact_v<C>) {
        rational best(0);
        for (const auto& p : cs.points) {
            rational fiber(0);
            for (const auto& q : cs.points)
                if (q.boundary_value() == p.boundary_value()) fiber += 1 / q.abs_derivative;
            if (fiber > best) best = fiber;
        }
        r.exact_rational = best;
        r.exact = to_double(best);
    } else {
        double best = 0.0;
        for (const auto& p : cs.points) {
            double fiber = 0.0;
            for (const auto& q : cs.points) {
                match mm = scalar_ops<C>::compare(q.boundary_value(), p.boundary_value());
                if (mm == match::indeterminate)
                    throw error(errc::indeterminate_data_match,
                                "alpha fiber grouping in the indeterminate band");
                if (mm == match::equal) fiber += 1.0 / scalar_ops<C>::as_double(q.abs_derivative);
            }
            best = std::max(best, fiber);
        }
        r.exact = best;
    }
    return r;
}

template <class C>
essential_norm_result essential_norm_composition(const self_map<C>& m,
                                                 const space_spec& space) {
    return essential_norm_composition(find_contact_points(m), space);
}

struct weighted_bounds_result {
    double lower = 0.0;  // sup_alpha int |w|^2 d mu_alpha^s
    double upper = 0.0;  // 4 * lower (the proven constant, reported verbatim)
    bool compact = false;
    std::optional<rational> lower_rational;
};

// Weighted essential norm bounds on the Hardy space: the operator
// f -> w (f ∘ phi) has essential norm squared between the fiber sums and four
// times them, and is compact exactly when the weight vanishes on the contacts.
// `weights` aligns with cs.points.
template <class C>
weighted_bounds_result weighted_essential_bounds(const contact_set<C>& cs,
                                                 const std::vector<C>& weights) {
    require_class_s(cs);
    if (weights.size() != cs.points.size())
        throw error(errc::parse_error, "one weight value per contact point is required");
    weighted_bounds_result r;
    if constexpr (is_exact_v<C>) {
        rational best(0);
        for (std::size_t i = 0; i < cs.points.size(); ++i) {
            rational fiber(0);
            for (std::size_t j = 0; j < cs.points.size(); ++j)
                if (cs.points[j].boundary_value() == cs.points[i].boundary_value())
                    fiber += norm_sq(weights[j]) / cs.points[j].abs_derivative;
            if (fiber > best) best = fiber;
        }
        r.lower_rational = best;
        r.lower = to_double(best);
        r.compact = best == 0;
    } else {
        double best = 0.0;
        for (std::size_t i = 0; i < cs.points.size(); ++i) {
            double fiber = 0.0;
            for (std::size_t j = 0; j < cs.points.size(); ++j)
                if (scalar_ops<C>::compare(cs.points[j].boundary_value(),
                                           cs.points[i].boundary_value()) == match::equal)
                    fiber += std::norm(weights[j]) /
                             scalar_ops<C>::as_double(cs.points[j].abs_derivative);
            best = std::max(best, fiber);
        }
        r.lower = best;
        r.compact = best == 0.0;
    }
    r.upper = 4.0 * r.lower;
    return r;
}

// M_w C_phi modulo compacts as a weighted combination of the osculating
// composition operators: one term w(zeta_i) C_{phi_i} per contact point.
// Zero weights drop out (the compact case gives the empty combination).
template <class C>
std::vector<std::pair<C, self_map<C>>> weighted_decomposition(const self_map<C>& m,
                                                              const std::vector<C>& weights) {
    contact_set<C> cs = find_contact_points(m);
    require_class_s(cs);
    if (!cs.map_class.in_s2)
        throw error(errc::map_not_in_s2, "weighted decomposition needs order-2 contacts");
    if (weights.size() != cs.points.size())
        throw error(errc::parse_error, "one weight value per contact point is required");
    std::vector<std::pair<C, self_map<C>>> out;
    for (std::size_t i = 0; i < cs.points.size(); ++i) {
        if (scalar_ops<C>::zero(weights[i])) continue;
        out.emplace_back(weights[i], osculating_map(m, cs.points[i]));
    }
    return out;
}

} // namespace calkin
