#pragma once

#include "calkin/selfmap.hpp"

namespace calkin {

template <class C>
bool is_unimodular(const C& z) {
    if constexpr (is_exact_v<C>) {
        return norm_sq(z) == 1;
    } else {
        return std::abs(std::abs(z) - 1.0) <= 1e-14;
    }
}

// rho(p, q) = |p - q| / |1 - conj(p) q| on the closed disk.
inline double pseudo_hyperbolic_disk(cnum p, cnum q) {
    if (std::abs(p) > 1 + 1e-12 || std::abs(q) > 1 + 1e-12)
        throw error(errc::parse_error, "pseudo-hyperbolic distance needs arguments in the closed disk");
    double num = std::abs(p - q);
    double den = std::abs(1.0 - std::conj(p) * q);
    if (den < 1e-15) {
        if (num < 1e-15)
            throw error(errc::indeterminate,
                        "rho(p, p) on the boundary is 0/0; use the boundary limit instead", p);
        return 1.0;
    }
    return num / den;
}

// Lambda(z, w) = |z - w| / |z - conj(w)| on the upper half-plane.
inline double pseudo_hyperbolic_halfplane(cnum p, cnum q) {
    if (p.imag() <= 0 || q.imag() <= 0)
        throw error(errc::argument_not_in_upper_half_plane,
                    "both arguments must have positive imaginary part",
                    p.imag() <= 0 ? p : q);
    return std::abs(p - q) / std::abs(p - std::conj(q));
}

// Lambda^2 stays in the scalar field, so it is exact for Gaussian-rational data.
template <class C>
typename scalar_ops<C>::real_type halfplane_metric_sq(const C& z, const C& w) {
    return scalar_ops<C>::norm_squared(z - w) /
           scalar_ops<C>::norm_squared(z - scalar_ops<C>::conjugate(w));
}

template <class C>
C imaginary_unit();

template <>
inline exact_complex imaginary_unit<exact_complex>() { return {rational(0), rational(1)}; }

template <>
inline cnum imaginary_unit<cnum>() { return {0.0, 1.0}; }

// tau_alpha(z) = i (alpha - z) / (alpha + z): disk onto upper half-plane, alpha -> 0.
template <class C>
self_map<C> cayley_to_halfplane(const C& alpha) {
    C i = imaginary_unit<C>();
    return self_map<C>::linear_fractional(-i, i * alpha, C(1), alpha);
}

// Inverse: z = alpha (i - w) / (i + w).
template <class C>
self_map<C> cayley_from_halfplane(const C& alpha) {
    C i = imaginary_unit<C>();
    return self_map<C>::linear_fractional(-alpha, i * alpha, C(1), i);
}

template <class C>
C cayley(const C& alpha, const C& z) {
    if (!is_unimodular(alpha))
        throw error(errc::parse_error, "Cayley base point must be unimodular");
    return cayley_to_halfplane(alpha).eval(z);
}

template <class C>
C cayley_inverse(const C& alpha, const C& w) {
    if (!is_unimodular(alpha))
        throw error(errc::parse_error, "Cayley base point must be unimodular");
    return cayley_from_halfplane(alpha).eval(w);
}

} // namespace calkin
