#pragma once

#include <algorithm>
#include <numbers>
#include <optional>
#include <vector>

#include "calkin/validation.hpp"

namespace calkin {

// Boundary jet D_k(phi, zeta) = (phi(zeta), phi'(zeta), ..., phi^{(k)}(zeta)).
template <class C>
struct data_vector {
    std::vector<C> entries;

    int order() const { return static_cast<int>(entries.size()) - 1; }
    const C& boundary_value() const { return entries[0]; }
    const C& first_derivative() const { return entries[1]; }
};

// all_equal compares entries 0..k of two jets; a borderline float comparison
// aborts instead of guessing.
template <class C>
match compare_data(const data_vector<C>& a, const data_vector<C>& b, int k) {
    if (a.order() < k || b.order() < k) return match::unequal;
    bool saw_indeterminate = false;
    for (int j = 0; j <= k; ++j) {
        match m = scalar_ops<C>::compare(a.entries[j], b.entries[j]);
        if (m == match::unequal) return match::unequal;
        if (m == match::indeterminate) saw_indeterminate = true;
    }
    return saw_indeterminate ? match::indeterminate : match::equal;
}

// Derivatives at 0 of u = tau_{phi(zeta)} ∘ phi ∘ tau_zeta^{-1}:
// u_derivs[j] = u^{(j+1)}(0). Below the order of contact the entries are real;
// the top entry has positive imaginary part.
template <class C>
struct halfplane_data {
    std::vector<C> u_derivs;
};

template <class C>
struct contact_point {
    C zeta;
    int order = 0; // 2m
    typename scalar_ops<C>::real_type abs_derivative{}; // |phi'(zeta)|, exact in exact mode
    data_vector<C> data;          // D_{2m}
    halfplane_data<C> halfplane;  // u'(0) .. u^{(2m)}(0)

    const C& boundary_value() const { return data.entries[0]; }
    const C& top_halfplane() const { return halfplane.u_derivs.back(); } // u^{(2m)}(0)
};

enum class flag3 { yes, no, unknown };

struct map_class_flags {
    bool in_s = false;
    flag3 in_s0 = flag3::no;
    bool in_s2 = false;
    bool in_l = false;
    bool automorphism = false;
};

template <class C>
struct contact_set {
    std::vector<contact_point<C>> points;
    map_class_flags map_class;

    bool empty() const { return points.empty(); }
    const contact_point<C>* at(const C& zeta) const {
        for (const auto& p : points)
            if (scalar_ops<C>::compare(p.zeta, zeta) == match::equal) return &p;
        return nullptr;
    }
};

namespace detail {

constexpr int max_jet_depth = 16;

// Taylor jet of u = tau_alpha ∘ phi ∘ tau_zeta^{-1} at the origin.
template <class C>
jet<C> halfplane_jet(const self_map<C>& m, const C& zeta, const C& alpha, std::size_t len) {
    self_map<C> to_disk = cayley_from_halfplane(zeta);
    jet<C> g = to_disk.jet_at(C(0), len);
    g.c[0] = C(0); // inner value is zeta; recentre for composition
    jet<C> f = m.jet_at(zeta, len);
    jet<C> h = compose(f, g, len); // phi ∘ tau_zeta^{-1}, constant term alpha
    h.c[0] = C(0);
    jet<C> t = cayley_to_halfplane(alpha).jet_at(alpha, len);
    return compose(t, h, len);
}

template <class C>
bool effectively_real(const C& v) {
    if constexpr (is_exact_v<C>) {
        return v.im == 0;
    } else {
        return std::abs(v.imag()) <= 1e-10 * std::max(1.0, std::abs(v));
    }
}

template <class C>
double imag_part(const C& v) {
    if constexpr (is_exact_v<C>) {
        return to_double(v.im);
    } else {
        return v.imag();
    }
}

// |phi'(zeta)| through the Julia-Caratheodory relation
// phi'(zeta) = conj(zeta) phi(zeta) |phi'(zeta)|, which keeps the modulus in
// the scalar field: |phi'| = zeta conj(phi(zeta)) phi'(zeta).
template <class C>
typename scalar_ops<C>::real_type exact_abs_derivative(const C& zeta, const C& value,
                                                       const C& deriv) {
    C h = zeta * scalar_ops<C>::conjugate(value) * deriv;
    if constexpr (is_exact_v<C>) {
        if (h.im != 0 || h.re <= 0)
            throw error(errc::data_extraction_failed,
                        "zeta conj(phi(zeta)) phi'(zeta) is not real positive");
        return h.re;
    } else {
        if (!effectively_real(h) || h.real() <= 0)
            throw error(errc::data_extraction_failed,
                        "zeta conj(phi(zeta)) phi'(zeta) is not real positive",
                        scalar_ops<C>::as_complex(zeta));
        return h.real();
    }
}

// First index n >= 2 with Im a_n != 0 in the expansion u(w) = sum a_n w^n.
// Deepens 4 -> 8 -> 16 before giving up.
template <class C>
int detect_contact_order(const self_map<C>& m, const C& zeta, const C& alpha) {
    for (int depth : {4, 8, max_jet_depth}) {
        jet<C> u = halfplane_jet(m, zeta, alpha, static_cast<std::size_t>(depth) + 1);
        for (int n = 2; n <= depth; ++n) {
            if (effectively_real(u.c[static_cast<std::size_t>(n)])) continue;
            if (n % 2 != 0)
                throw error(errc::data_extraction_failed,
                            "first non-real half-plane coefficient has odd index",
                            scalar_ops<C>::as_complex(zeta));
            if (imag_part(u.c[static_cast<std::size_t>(n)]) < 0)
                throw error(errc::data_extraction_failed,
                            "top half-plane coefficient has negative imaginary part",
                            scalar_ops<C>::as_complex(zeta));
            return n;
        }
    }
    throw error(errc::order_not_detected,
                "all half-plane coefficients real up to depth 16 (automorphism-like contact)",
                scalar_ops<C>::as_complex(zeta));
}

template <class C>
contact_point<C> extract_contact(const self_map<C>& m, const C& zeta) {
    contact_point<C> p;
    p.zeta = zeta;
    C alpha = m.eval(zeta);
    p.order = detect_contact_order(m, zeta, alpha);
    std::size_t len = static_cast<std::size_t>(p.order) + 1;
    jet<C> j = m.jet_at(zeta, len + 1);
    p.data.entries.resize(len);
    C fact(1);
    for (std::size_t k = 0; k < len; ++k) {
        if (k >= 2) fact *= C(static_cast<int>(k));
        p.data.entries[k] = j.c[k] * fact;
    }
    p.abs_derivative = exact_abs_derivative(zeta, p.data.entries[0], p.data.entries[1]);
    jet<C> u = halfplane_jet(m, zeta, alpha, len + 1);
    p.halfplane.u_derivs.resize(static_cast<std::size_t>(p.order));
    C ufact(1);
    for (int k = 1; k <= p.order; ++k) {
        ufact *= C(k);
        p.halfplane.u_derivs[static_cast<std::size_t>(k - 1)] = u.c[static_cast<std::size_t>(k)] * ufact;
    }
    return p;
}

inline double angle_in_2pi(cnum z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * std::numbers::pi;
    // a numeric contact at angle -1e-14 should sort like angle 0
    if (a >= 2.0 * std::numbers::pi - 1e-9) a -= 2.0 * std::numbers::pi;
    return a;
}

template <class C>
void sort_contacts(std::vector<contact_point<C>>& pts) {
    std::sort(pts.begin(), pts.end(), [](const contact_point<C>& x, const contact_point<C>& y) {
        return angle_in_2pi(scalar_ops<C>::as_complex(x.zeta)) <
               angle_in_2pi(scalar_ops<C>::as_complex(y.zeta));
    });
}

// ---- contact location, float path: scan 2^14 samples of 1-|phi|^2, bisect the
// derivative to 1e-13, cluster.
inline std::vector<cnum> locate_contacts_numeric(const float_map& m) {
    const int n = 1 << 14;
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k)
        g[static_cast<std::size_t>(k)] =
            1.0 - std::norm(m.eval(std::polar(1.0, 2.0 * std::numbers::pi * k / n)));
    auto slope = [&](double theta) {
        // d/dtheta (1 - |phi(e^{i theta})|^2) = -2 Re(conj(phi) phi' i z)
        cnum z = std::polar(1.0, theta);
        jet<cnum> j = m.jet_at(z, 2);
        return -2.0 * std::real(std::conj(j.c[0]) * j.c[1] * cnum(0.0, 1.0) * z);
    };
    std::vector<double> found;
    const double h = 2.0 * std::numbers::pi / n;
    for (int k = 0; k < n; ++k) {
        int prev = (k + n - 1) % n, next = (k + 1) % n;
        std::size_t ku = static_cast<std::size_t>(k);
        if (!(g[ku] <= g[static_cast<std::size_t>(prev)] && g[ku] < g[static_cast<std::size_t>(next)]))
            continue;
        if (g[ku] > 1e-3) continue;
        double lo = (k - 1) * h, hi = (k + 1) * h;
        double slo = slope(lo), shi = slope(hi);
        if (slo > 0 || shi < 0) continue; // not bracketing a minimum of 1-|phi|^2
        for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            if (slope(mid) < 0)
                lo = mid;
            else
                hi = mid;
        }
        double theta = 0.5 * (lo + hi);
        double gmin = 1.0 - std::norm(m.eval(std::polar(1.0, theta)));
        if (gmin <= 1e-11)
            found.push_back(theta);
        else if (gmin < 1e-8)
            throw error(errc::indeterminate, "borderline boundary contact",
                        std::polar(1.0, theta));
    }
    std::vector<cnum> zs;
    for (double t : found) {
        cnum z = std::polar(1.0, t);
        bool dup = false;
        for (const cnum& w : zs) dup = dup || std::abs(w - z) < 1e-8;
        if (!dup) zs.push_back(z);
    }
    return zs;
}

// Unimodular Gaussian rationals via the tangent half-angle parametrization
// zeta = ((1-t^2) + 2ti) / (1+t^2). The float angle of a high-order contact is
// only localized to roughly eps^(1/(order-1)), so this returns loosely
// matching candidates; exact verification against the contact polynomial
// decides.
inline std::vector<exact_complex> snap_unimodular(double theta) {
    std::vector<exact_complex> candidates{exact_complex(1), exact_complex(-1)};
    auto from_t = [](const rational& t) {
        rational den = 1 + t * t;
        return exact_complex{(1 - t * t) / den, 2 * t / den};
    };
    double t = std::tan(theta / 2.0);
    if (!std::isfinite(t) || std::abs(t) > 1e7) return candidates;
    // continued fraction convergents of t with denominators up to 10^4
    double x = t;
    bigint p0 = 0, q0 = 1, p1 = 1, q1 = 0; // p0/q0 two back, p1/q1 one back
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (std::abs(fl) > 1e18) break;
        bigint a(static_cast<long long>(fl));
        bigint p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > 10000) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        rational approx(p1, q1);
        if (std::abs(to_double(approx) - t) < 1e-3) candidates.push_back(from_t(approx));
        double frac = x - fl;
        if (std::abs(frac) < 1e-15) break;
        x = 1.0 / frac;
    }
    return candidates;
}

// Coefficient-conjugated polynomial evaluated through 1/z:
// on |z| = 1, |p(z)|^2 = p(z) * rev_conj(p)(z) / z^{deg p}.
inline std::vector<exact_complex> reversed_conjugate(const std::vector<exact_complex>& p) {
    std::vector<exact_complex> r(p.rbegin(), p.rend());
    for (auto& c : r) c = conj(c);
    return r;
}

// Circle-contact polynomial of an exact rational map p/q:
//   G(z) = z^{dp} q(z) qr(z) * z^{dq-dp...}   — assembled so that on |z|=1,
//   G(z) = z^D (|q(z)|^2 - |p(z)|^2) with D = max(deg p, deg q).
inline std::vector<exact_complex> contact_polynomial(const std::vector<exact_complex>& p,
                                                     const std::vector<exact_complex>& q) {
    std::size_t dp = p.size() - 1, dq = q.size() - 1, D = std::max(dp, dq);
    auto shift = [](std::vector<exact_complex> v, std::size_t k) {
        v.insert(v.begin(), k, exact_complex(0));
        return v;
    };
    std::vector<exact_complex> qq = shift(poly_mul(q, reversed_conjugate(q)), D - dq);
    std::vector<exact_complex> pp = shift(poly_mul(p, reversed_conjugate(p)), D - dp);
    if (pp.size() > qq.size()) qq.resize(pp.size(), exact_complex(0));
    if (qq.size() > pp.size()) pp.resize(qq.size(), exact_complex(0));
    for (std::size_t k = 0; k < qq.size(); ++k) qq[k] = qq[k] - pp[k];
    return qq;
}

inline std::vector<exact_complex> locate_contacts(const exact_map& m_in) {
    exact_map m = flattened(m_in);
    if (m.variant() == exact_map::kind::linear_fractional) {
        lft_disk_algebra alg = lft_disk_algebra::of(m);
        if (alg.constant_map) return {};
        if (alg.is_automorphism())
            throw error(errc::contact_arc_detected, "automorphism: |phi| = 1 on the whole circle");
        if (!alg.has_contact()) return {};
        return {alg.contact_point()};
    }
    auto [p, q] = m.fraction();
    std::vector<exact_complex> G = contact_polynomial(p, q);
    bool all_zero = true;
    for (const auto& c : G) all_zero = all_zero && is_zero(c);
    if (all_zero)
        throw error(errc::contact_arc_detected, "inner map: |phi| = 1 a.e. on the circle");
    std::vector<cnum> numeric = locate_contacts_numeric(to_float(m));
    std::vector<exact_complex> out;
    for (const cnum& z : numeric) {
        std::optional<exact_complex> found;
        for (const exact_complex& zeta : snap_unimodular(angle_in_2pi(z))) {
            if (norm_sq(zeta) != 1 || !is_zero(exact_map::poly_eval(G, zeta))) continue;
            if (std::abs(to_complex(zeta) - z) > 1e-3) continue;
            found = zeta;
            break;
        }
        if (!found)
            throw error(errc::data_extraction_failed,
                        "contact point does not snap to a Gaussian rational; use float mode", z);
        bool dup = false;
        for (const exact_complex& seen : out) dup = dup || seen == *found;
        if (!dup) out.push_back(*found);
    }
    return out;
}

inline std::vector<cnum> locate_contacts(const float_map& m) {
    if (m.variant() == float_map::kind::linear_fractional) {
        cnum A = m.c() * std::conj(m.d()) - m.a() * std::conj(m.b());
        double B = std::norm(m.c()) + std::norm(m.d()) - std::norm(m.a()) - std::norm(m.b());
        double margin = B - 2.0 * std::abs(A);
        double scale = std::max(1.0, B);
        if (std::abs(A) == 0.0 && std::abs(B) < 1e-12)
            throw error(errc::contact_arc_detected, "automorphism: |phi| = 1 on the whole circle");
        if (margin > 1e-8 * scale) return {};
        if (margin > 1e-12 * scale)
            throw error(errc::indeterminate, "borderline image-circle tangency");
        return {-std::conj(A) / std::abs(A)};
    }
    return locate_contacts_numeric(m);
}

template <class C>
float_map to_float_any(const self_map<C>& m) {
    if constexpr (is_exact_v<C>) {
        return to_float(m);
    } else {
        return m;
    }
}

// Numeric sup of |phi| off delta-neighborhoods of the contact set (the S_0 test).
template <class C>
flag3 bounded_off_contacts(const self_map<C>& m, const std::vector<contact_point<C>>& pts) {
    float_map fm = to_float_any(m);
    const int n = 8192;
    const double delta = 0.05;
    double sup = 0.0;
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * (k + 0.5) / n;
        bool excluded = false;
        for (const auto& p : pts) {
            double d = std::abs(theta - angle_in_2pi(scalar_ops<C>::as_complex(p.zeta)));
            d = std::min(d, 2.0 * std::numbers::pi - d);
            excluded = excluded || d < delta;
        }
        if (excluded) continue;
        sup = std::max(sup, std::abs(fm.eval(std::polar(1.0, theta))));
    }
    if (sup < 1.0 - 1e-6) return flag3::yes;
    if (sup >= 1.0 - 1e-10) return flag3::no;
    return flag3::unknown;
}

} // namespace detail

// All boundary contact points of a map, with full jets and class flags.
// Rejects maps that fail self-map validation rather than scanning them.
template <class C>
contact_set<C> find_contact_points(const self_map<C>& m) {
    require_valid_self_map(m);
    contact_set<C> cs;
    std::vector<C> zetas = detail::locate_contacts(m);
    for (const C& zeta : zetas) cs.points.push_back(detail::extract_contact(m, zeta));
    detail::sort_contacts(cs.points);

    cs.map_class.in_s = true;
    cs.map_class.in_s2 = true;
    for (const auto& p : cs.points) cs.map_class.in_s2 = cs.map_class.in_s2 && p.order == 2;
    cs.map_class.in_l =
        m.is_linear_fractional() && !cs.points.empty();
    cs.map_class.in_s0 = detail::bounded_off_contacts(m, cs.points);
    return cs;
}

// Class flags alone; automorphisms and arc-contact maps come back all-false
// instead of throwing.
template <class C>
map_class_flags class_membership(const self_map<C>& m) {
    try {
        return find_contact_points(m).map_class;
    } catch (const error& e) {
        if (e.code() == errc::contact_arc_detected || e.code() == errc::order_not_detected) {
            map_class_flags f;
            f.automorphism =
                m.is_linear_fractional() && validate_self_map(m).is_automorphism;
            return f;
        }
        throw;
    }
}

template <class C>
struct angular_derivative_result {
    bool finite = false;
    C value{};               // phi'(zeta) when finite
    double radial_quotient = std::numeric_limits<double>::infinity(); // JC cross-check
};

// Julia-Caratheodory: liminf (1-|phi(z)|)/(1-|z|) = |phi'(zeta)| and the
// derivative exists iff the quotient is bounded; for our rational maps that is
// exactly the case |phi(zeta)| = 1.
template <class C>
angular_derivative_result<C> angular_derivative(const self_map<C>& m, const C& zeta) {
    if (!is_unimodular(zeta))
        throw error(errc::parse_error, "angular derivative requested off the unit circle");
    angular_derivative_result<C> r;
    C v = m.eval(zeta);
    bool contact;
    if constexpr (is_exact_v<C>) {
        contact = norm_sq(v) == 1;
    } else {
        contact = std::abs(std::abs(v) - 1.0) < 1e-10;
    }
    float_map fm = detail::to_float_any(m);
    cnum zf = scalar_ops<C>::as_complex(zeta);
    zf /= std::abs(zf);
    // Radial quotients q_j = (1-|phi(r zeta)|)/(1-r) at r = 1-2^{-j} expand as
    // L + C 2^{-j} + D 4^{-j} + ...; two Richardson stages kill C and D, and
    // the median over a j-window rejects the rounding-noise outliers.
    std::vector<double> q(41, 0.0);
    for (int j = 10; j <= 40; ++j) {
        double one_minus_r = std::ldexp(1.0, -j);
        q[static_cast<std::size_t>(j)] =
            (1.0 - std::abs(fm.eval((1.0 - one_minus_r) * zf))) / one_minus_r;
    }
    std::vector<double> extrapolated;
    for (int j = 14; j <= 22; ++j) {
        double r1a = 2.0 * q[static_cast<std::size_t>(j + 1)] - q[static_cast<std::size_t>(j)];
        double r1b = 2.0 * q[static_cast<std::size_t>(j + 2)] - q[static_cast<std::size_t>(j + 1)];
        extrapolated.push_back((4.0 * r1b - r1a) / 3.0);
    }
    std::nth_element(extrapolated.begin(), extrapolated.begin() + extrapolated.size() / 2,
                     extrapolated.end());
    r.radial_quotient = extrapolated[extrapolated.size() / 2];
    if (!contact) return r; // |phi(zeta)| < 1: infinite angular derivative
    r.finite = true;
    r.value = m.derivative(zeta, 1);
    return r;
}

template <class C>
int order_of_contact(const self_map<C>& m, const C& zeta) {
    C alpha = m.eval(zeta);
    if constexpr (is_exact_v<C>) {
        if (norm_sq(alpha) != 1)
            throw error(errc::parse_error, "order of contact requested at a non-contact point");
    } else {
        if (std::abs(std::abs(alpha) - 1.0) > 1e-10)
            throw error(errc::parse_error, "order of contact requested at a non-contact point");
    }
    return detail::detect_contact_order(m, zeta, alpha);
}

// u'(0), ..., u^{(depth)}(0) for u = tau_{phi(zeta)} ∘ phi ∘ tau_zeta^{-1}.
template <class C>
halfplane_data<C> halfplane_transfer(const self_map<C>& m, const C& zeta, int depth) {
    C alpha = m.eval(zeta);
    jet<C> u = detail::halfplane_jet(m, zeta, alpha, static_cast<std::size_t>(depth) + 1);
    halfplane_data<C> h;
    h.u_derivs.resize(static_cast<std::size_t>(depth));
    C fact(1);
    for (int k = 1; k <= depth; ++k) {
        fact *= C(k);
        h.u_derivs[static_cast<std::size_t>(k - 1)] = u.c[static_cast<std::size_t>(k)] * fact;
    }
    return h;
}

enum class rho_case {
    no_contact,               // neither map touches the circle at zeta
    one_sided_contact,        // exactly one does: rho = 1
    different_boundary_values,// both touch, phi(zeta) != psi(zeta): rho = 1
    data_mismatch,            // orders or D_{2m-1} differ: rho -> 1
    top_data,                 // Lambda of the top half-plane coefficients
    full_agreement,           // D_{2m} equal: rho -> 0
};

template <class C>
struct rho_limit_result {
    double value = 0.0;
    rho_case kind = rho_case::no_contact;
    std::optional<typename scalar_ops<C>::real_type> value_sq; // exact rho^2 when available
};

// The canonical boundary value rho(zeta) = lim rho(e^{i theta}); redefined on
// the (finite) contact set and used everywhere downstream.
template <class C>
rho_limit_result<C> rho_boundary_limit(const self_map<C>& phi, const self_map<C>& psi,
                                       const C& zeta) {
    rho_limit_result<C> r;
    C pv = phi.eval(zeta), qv = psi.eval(zeta);
    bool c1, c2;
    if constexpr (is_exact_v<C>) {
        c1 = norm_sq(pv) == 1;
        c2 = norm_sq(qv) == 1;
    } else {
        c1 = std::abs(std::abs(pv) - 1.0) < 1e-10;
        c2 = std::abs(std::abs(qv) - 1.0) < 1e-10;
    }
    if (!c1 && !c2) {
        r.kind = rho_case::no_contact;
        r.value = pseudo_hyperbolic_disk(scalar_ops<C>::as_complex(pv),
                                         scalar_ops<C>::as_complex(qv));
        return r;
    }
    if (c1 != c2) {
        r.kind = rho_case::one_sided_contact;
        r.value = 1.0;
        return r;
    }
    match same_value = scalar_ops<C>::compare(pv, qv);
    if (same_value == match::indeterminate)
        throw error(errc::indeterminate_data_match, "boundary values match only borderline",
                    scalar_ops<C>::as_complex(zeta));
    if (same_value == match::unequal) {
        r.kind = rho_case::different_boundary_values;
        r.value = 1.0;
        return r;
    }
    contact_point<C> p = detail::extract_contact(phi, zeta);
    contact_point<C> q = detail::extract_contact(psi, zeta);
    if (p.order != q.order) {
        r.kind = rho_case::data_mismatch;
        r.value = 1.0;
        return r;
    }
    match below_top = compare_data(p.data, q.data, p.order - 1);
    if (below_top == match::indeterminate)
        throw error(errc::indeterminate_data_match, "jet comparison in the indeterminate band",
                    scalar_ops<C>::as_complex(zeta));
    if (below_top == match::unequal) {
        r.kind = rho_case::data_mismatch;
        r.value = 1.0;
        return r;
    }
    match top = scalar_ops<C>::compare(p.data.entries.back(), q.data.entries.back());
    if (top == match::indeterminate)
        throw error(errc::indeterminate_data_match, "top jet entry in the indeterminate band",
                    scalar_ops<C>::as_complex(zeta));
    if (top == match::equal) {
        r.kind = rho_case::full_agreement;
        r.value = 0.0;
        r.value_sq = typename scalar_ops<C>::real_type(0);
        return r;
    }
    r.kind = rho_case::top_data;
    auto lam_sq = halfplane_metric_sq(p.top_halfplane(), q.top_halfplane());
    r.value_sq = lam_sq;
    r.value = std::sqrt(scalar_ops<C>::as_double(lam_sq));
    return r;
}

} // namespace calkin
