#pragma once

#include "calkin/halfplane_kernel.hpp"
#include "calkin/relations.hpp"

namespace calkin {

// A real quantity carried in double with an exact rational shadow when the
// inputs were Gaussian rational and the exponent an integer.
struct real_value {
    double value = 0.0;
    std::optional<rational> exact;
};

namespace detail {

inline bool integral_beta(double beta) { return beta == std::floor(beta) && beta < 64; }

inline rational rational_pow(const rational& base, int e) {
    rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Partition of (index, point) pairs by equality of D_k; preserves first-seen
// order of the representatives.
template <class C>
std::vector<std::vector<std::pair<int, const contact_point<C>*>>> partition_by_data(
    const std::vector<std::pair<int, const contact_point<C>*>>& items, int k) {
    std::vector<std::vector<std::pair<int, const contact_point<C>*>>> parts;
    for (const auto& it : items) {
        bool placed = false;
        for (auto& part : parts) {
            match m = compare_data(part.front().second->data, it.second->data, k);
            if (m == match::indeterminate)
                throw error(errc::indeterminate_data_match,
                            "jet comparison in the indeterminate band");
            if (m == match::equal) {
                part.push_back(it);
                placed = true;
                break;
            }
        }
        if (!placed) parts.push_back({it});
    }
    return parts;
}

} // namespace detail

// Sum over first-order data classes at zeta of |sum of coefficients|^2 /
// |phi'(zeta)|^beta: a certified lower bound for the essential norm squared of
// the combination.
template <class C>
real_value first_order_lower_bound(const relation_engine<C>& eng, const std::vector<C>& coeffs,
                                   const C& zeta, const space_spec& space) {
    auto here = eng.contacts_at(zeta);
    auto parts = detail::partition_by_data(here, 1);
    real_value out;
    bool exact_ok = is_exact_v<C> && detail::integral_beta(space.beta);
    rational acc(0);
    for (const auto& part : parts) {
        C sum(0);
        for (const auto& [j, p] : part) sum += coeffs[static_cast<std::size_t>(j)];
        const auto& rep = *part.front().second;
        double term = scalar_ops<C>::as_double(scalar_ops<C>::norm_squared(sum)) /
                      std::pow(scalar_ops<C>::as_double(rep.abs_derivative), space.beta);
        out.value += term;
        if constexpr (is_exact_v<C>) {
            if (exact_ok)
                acc += norm_sq(sum) /
                       detail::rational_pow(rep.abs_derivative, static_cast<int>(space.beta));
        }
    }
    if (exact_ok) out.exact = acc;
    return out;
}

// Higher-order version: members with order of contact at least k, grouped by
// D_{k-1}; valid for k >= 3.
template <class C>
real_value higher_order_lower_bound(const relation_engine<C>& eng, const std::vector<C>& coeffs,
                                    const C& zeta, int k, const space_spec& space) {
    if (k < 3) throw error(errc::parse_error, "higher-order bound needs k >= 3");
    auto here = eng.contacts_at(zeta);
    std::erase_if(here, [&](const auto& it) { return it.second->order < k; });
    auto parts = detail::partition_by_data(here, k - 1);
    real_value out;
    bool exact_ok = is_exact_v<C> && detail::integral_beta(space.beta);
    rational acc(0);
    for (const auto& part : parts) {
        C sum(0);
        for (const auto& [j, p] : part) sum += coeffs[static_cast<std::size_t>(j)];
        const auto& rep = *part.front().second;
        out.value += scalar_ops<C>::as_double(scalar_ops<C>::norm_squared(sum)) /
                     std::pow(scalar_ops<C>::as_double(rep.abs_derivative), space.beta);
        if constexpr (is_exact_v<C>) {
            if (exact_ok)
                acc += norm_sq(sum) /
                       detail::rational_pow(rep.abs_derivative, static_cast<int>(space.beta));
        }
    }
    if (exact_ok) out.exact = acc;
    return out;
}

// Kernel-vector form of the bound: each D_{k-1} class contributes the norm of
// sum conj(c_j) k_{w_j} with w_j = u_j'(0)/2 - i A u_j^{(k)}(0); requires even
// k and half-plane data to order k. All w_j land in the right half-plane.
template <class C>
double kernel_sum_lower_bound(const relation_engine<C>& eng, const std::vector<C>& coeffs,
                              const C& zeta, int k, double a_param, const space_spec& space) {
    if (k < 2 || k % 2 != 0) throw error(errc::parse_error, "kernel-sum bound needs even k >= 2");
    if (a_param <= 0) throw error(errc::parse_error, "kernel-sum bound needs A > 0");
    auto here = eng.contacts_at(zeta);
    std::erase_if(here, [&](const auto& it) { return it.second->order < k; });
    auto parts = detail::partition_by_data(here, k - 1);
    double total = 0.0;
    for (const auto& part : parts) {
        std::vector<cnum> ws, cs;
        for (const auto& [j, p] : part) {
            cnum u1 = scalar_ops<C>::as_complex(p->halfplane.u_derivs[0]);
            cnum uk = scalar_ops<C>::as_complex(p->halfplane.u_derivs[static_cast<std::size_t>(k - 1)]);
            cnum w = u1 / 2.0 - cnum(0.0, 1.0) * a_param * uk;
            if (w.real() <= 0)
                throw error(errc::gram_not_psd, "kernel point left the right half-plane", w);
            ws.push_back(w);
            cs.push_back(std::conj(scalar_ops<C>::as_complex(coeffs[static_cast<std::size_t>(j)])));
        }
        total += halfplane_kernel_norm_sq(ws, cs, space.beta);
    }
    return total;
}

struct difference_bounds_result {
    double lower = 0.0;          // (1/4) max_zeta rho(zeta)^2 / |phi'(zeta)|
    double upper_quantity = 0.0; // max_alpha sum_{phi(zeta)=alpha} rho(zeta)^2/|phi'(zeta)|,
                                 // certified up to an absolute constant B only when rho <= 1/2
    bool rho_small = true;       // rho(zeta) <= 1/2 at every contact
    std::optional<rational> lower_rational;
};

// Two-sided essential-norm bounds for a difference of composition operators on
// the Hardy space, for pairs with matching contact sets, orders, and jets below
// top order. The lower bound does not need rho <= 1/2; the upper side does and
// holds up to an unspecified absolute constant, so only the quantity is
// reported.
template <class C>
difference_bounds_result difference_bounds(const self_map<C>& phi, const self_map<C>& psi,
                                           const space_spec& space) {
    if (!space.is_hardy())
        throw error(errc::hypotheses_not_met, "difference bounds are a Hardy-space result");
    contact_set<C> fp = find_contact_points(phi), fq = find_contact_points(psi);
    require_class_s(fp);
    require_class_s(fq);
    if (fp.points.size() != fq.points.size())
        throw error(errc::hypotheses_not_met, "contact sets differ");
    for (const auto& p : fp.points)
        if (!fq.at(p.zeta)) throw error(errc::hypotheses_not_met, "contact sets differ");
    for (const auto& p : fp.points) {
        const contact_point<C>* q = fq.at(p.zeta);
        if (p.order != q->order)
            throw error(errc::hypotheses_not_met, "orders of contact differ",
                        scalar_ops<C>::as_complex(p.zeta));
        match m = compare_data(p.data, q->data, p.order - 1);
        if (m == match::indeterminate)
            throw error(errc::indeterminate_data_match, "jet comparison in the indeterminate band");
        if (m == match::unequal)
            throw error(errc::hypotheses_not_met, "jets below top order differ",
                        scalar_ops<C>::as_complex(p.zeta));
    }

    difference_bounds_result out;
    bool exact_ok = is_exact_v<C>;
    rational best(0);
    for (const auto& p : fp.points) {
        rho_limit_result<C> rho = rho_boundary_limit(phi, psi, p.zeta);
        double rsq = rho.value_sq ? scalar_ops<C>::as_double(*rho.value_sq)
                                  : rho.value * rho.value;
        if (rsq > 0.25 + 1e-12) out.rho_small = false;
        out.lower = std::max(out.lower, 0.25 * rsq / scalar_ops<C>::as_double(p.abs_derivative));
        if constexpr (is_exact_v<C>) {
            if (rho.value_sq) {
                rational c = *rho.value_sq / p.abs_derivative / 4;
                if (c > best) best = c;
            } else {
                exact_ok = false;
            }
        }
    }
    for (const auto& p : fp.points) {
        double fiber = 0.0;
        for (const auto& q : fp.points) {
            if (scalar_ops<C>::compare(q.boundary_value(), p.boundary_value()) != match::equal)
                continue;
            rho_limit_result<C> rho = rho_boundary_limit(phi, psi, q.zeta);
            double rsq = rho.value_sq ? scalar_ops<C>::as_double(*rho.value_sq)
                                      : rho.value * rho.value;
            fiber += rsq / scalar_ops<C>::as_double(q.abs_derivative);
        }
        out.upper_quantity = std::max(out.upper_quantity, fiber);
    }
    if (exact_ok) out.lower_rational = best;
    return out;
}

// Compact difference: equal contact sets, equal orders, and equal full jets
// D_{2m} everywhere; identical to the grouped-sum verdict on coefficients
// (1, -1).
template <class C>
bool compact_difference_check(const self_map<C>& phi, const self_map<C>& psi) {
    relation_engine<C> eng({phi, psi});
    return eng.decide({C(1), C(-1)}).compact;
}

// Lower bounds from mismatched jets at one point. Orders 2m > 2n: the deeper
// map alone contributes 1/|phi'|^beta. Equal orders with different jets below
// the top: both contribute.
template <class C>
real_value jet_mismatch_lower_bound(const self_map<C>& phi, const self_map<C>& psi, const C& zeta,
                                    const space_spec& space) {
    contact_point<C> p = detail::extract_contact(phi, zeta);
    contact_point<C> q = detail::extract_contact(psi, zeta);
    bool exact_ok = is_exact_v<C> && detail::integral_beta(space.beta);
    auto power = [&](const contact_point<C>& cp) {
        return std::pow(scalar_ops<C>::as_double(cp.abs_derivative), -space.beta);
    };
    real_value out;
    if (p.order != q.order) {
        const contact_point<C>& deeper = p.order > q.order ? p : q;
        out.value = power(deeper);
        if constexpr (is_exact_v<C>) {
            if (exact_ok)
                out.exact = 1 / detail::rational_pow(deeper.abs_derivative,
                                                     static_cast<int>(space.beta));
        }
        return out;
    }
    match m = compare_data(p.data, q.data, p.order - 1);
    if (m == match::indeterminate)
        throw error(errc::indeterminate_data_match, "jet comparison in the indeterminate band");
    if (m == match::unequal) {
        out.value = power(p) + power(q);
        if constexpr (is_exact_v<C>) {
            if (exact_ok)
                out.exact =
                    1 / detail::rational_pow(p.abs_derivative, static_cast<int>(space.beta)) +
                    1 / detail::rational_pow(q.abs_derivative, static_cast<int>(space.beta));
        }
        return out;
    }
    out.value = 0.0;
    if (exact_ok) out.exact = rational(0);
    return out;
}

// Same-component test for maps that touch the circle only at their contact
// sets: equal contact sets, equal orders, equal jets *below* top order. Weaker
// than compact difference (top-order data may differ).
template <class C>
bool connectedness_check(const self_map<C>& phi, const self_map<C>& psi) {
    contact_set<C> fp = find_contact_points(phi), fq = find_contact_points(psi);
    for (const contact_set<C>* cs : {&fp, &fq}) {
        if (!cs->map_class.in_s) throw error(errc::map_not_in_s, "map is not in the admissible class");
        if (cs->map_class.in_s0 == flag3::unknown)
            throw error(errc::indeterminate, "boundedness off the contact set is borderline");
        if (cs->map_class.in_s0 == flag3::no)
            throw error(errc::map_not_in_s0, "map touches the circle off its contact set");
    }
    if (fp.points.size() != fq.points.size()) return false;
    for (const auto& p : fp.points) {
        const contact_point<C>* q = fq.at(p.zeta);
        if (!q || p.order != q->order) return false;
        match m = compare_data(p.data, q->data, p.order - 1);
        if (m == match::indeterminate)
            throw error(errc::indeterminate_data_match, "jet comparison in the indeterminate band");
        if (m == match::unequal) return false;
    }
    return true;
}

template <class C>
struct sum_decomposition_report {
    bool equivalent = false;     // C_phi = sum C_{phi_i} modulo compacts
    bool parts_disjoint = true;  // necessary condition
    bool union_matches = true;   // necessary condition
    compactness_verdict<C> verdict;
};

// Checks C_phi - sum C_{phi_i} for compactness and reports the necessary
// contact-set conditions (pairwise disjoint parts covering F(phi)).
template <class C>
sum_decomposition_report<C> sum_decomposition_check(const self_map<C>& phi,
                                                    const std::vector<self_map<C>>& parts) {
    std::vector<self_map<C>> family{phi};
    family.insert(family.end(), parts.begin(), parts.end());
    relation_engine<C> eng(family);
    std::vector<C> coeffs(family.size(), C(-1));
    coeffs[0] = C(1);
    sum_decomposition_report<C> rep;
    rep.verdict = eng.decide(coeffs);
    rep.equivalent = rep.verdict.compact;

    const auto& sets = eng.contact_sets();
    for (std::size_t i = 1; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            for (const auto& p : sets[i].points)
                if (sets[j].at(p.zeta)) rep.parts_disjoint = false;
    for (const auto& p : sets[0].points) {
        bool covered = false;
        for (std::size_t i = 1; i < sets.size(); ++i) covered = covered || sets[i].at(p.zeta);
        rep.union_matches = rep.union_matches && covered;
    }
    for (std::size_t i = 1; i < sets.size(); ++i)
        for (const auto& p : sets[i].points)
            rep.union_matches = rep.union_matches && sets[0].at(p.zeta);
    return rep;
}

} // namespace calkin
