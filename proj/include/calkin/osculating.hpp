#pragma once

#include "calkin/boundary.hpp"

namespace calkin {

// The unique linear fractional map sharing second-order boundary data with a
// map at an order-2 contact point. In half-plane coordinates the data
// (u'(0), u''(0)) pins down u0(w) = a w / (1 + b w) with a = u'(0) and
// b = -u''(0)/(2a); conjugating back by the Cayley maps gives the osculating
// map, whose image circle osculates the boundary curve at phi(zeta).
template <class C>
self_map<C> osculating_map(const self_map<C>& m, const contact_point<C>& p) {
    if (p.order != 2)
        throw error(errc::map_not_in_s2, "osculating construction needs an order-2 contact");
    const C& a = p.halfplane.u_derivs[0];
    const C& u2 = p.halfplane.u_derivs[1];
    C b = -u2 / (C(2) * a);
    self_map<C> u0 = self_map<C>::linear_fractional(a, C(0), b, C(1));
    C alpha = p.boundary_value();
    self_map<C> osc = self_map<C>::composed(
        cayley_from_halfplane(alpha), self_map<C>::composed(u0, cayley_to_halfplane(p.zeta)));

    validation_report rep = validate_self_map(osc);
    if (!rep.passed())
        throw error(errc::osculating_map_invalid,
                    "constructed osculating map fails self-map validation (bad upstream data)");
    jet<C> j = osc.jet_at(p.zeta, 3);
    data_vector<C> d;
    d.entries = {j.c[0], j.c[1], j.c[2] * C(2)};
    if (compare_data(d, p.data, 2) != match::equal)
        throw error(errc::osculating_map_invalid,
                    "osculating map does not reproduce the second-order data");
    return osc;
}

// One osculating linear fractional map per contact point of a map whose
// contacts all have order two.
template <class C>
std::vector<self_map<C>> osculating_decomposition(const self_map<C>& m) {
    contact_set<C> cs = find_contact_points(m);
    if (!cs.map_class.in_s || !cs.map_class.in_s2)
        throw error(errc::map_not_in_s2, "map has a contact of order > 2");
    std::vector<self_map<C>> out;
    out.reserve(cs.points.size());
    for (const auto& p : cs.points) out.push_back(osculating_map(m, p));
    return out;
}

} // namespace calkin
