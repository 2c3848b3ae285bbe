#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "calkin/rational.hpp"

namespace calkin {

// Gaussian rational: exact complex arithmetic over Q(i). Equality is decidable,
// which is what makes the boundary-data matching downstream exact.
struct exact_complex {
    rational re;
    rational im;

    exact_complex() = default;
    exact_complex(rational r) : re(std::move(r)) {}
    exact_complex(rational r, rational i) : re(std::move(r)), im(std::move(i)) {}
    exact_complex(int n) : re(n) {}

    friend exact_complex operator+(const exact_complex& a, const exact_complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend exact_complex operator-(const exact_complex& a, const exact_complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend exact_complex operator-(const exact_complex& a) { return {-a.re, -a.im}; }
    friend exact_complex operator*(const exact_complex& a, const exact_complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend exact_complex operator/(const exact_complex& a, const exact_complex& b) {
        rational d = b.re * b.re + b.im * b.im;
        if (d == 0) throw error(errc::pole_at, "division by zero in exact arithmetic");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    exact_complex& operator+=(const exact_complex& b) { re += b.re; im += b.im; return *this; }
    exact_complex& operator-=(const exact_complex& b) { re -= b.re; im -= b.im; return *this; }
    exact_complex& operator*=(const exact_complex& b) { return *this = *this * b; }

    friend bool operator==(const exact_complex& a, const exact_complex& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const exact_complex& a, const exact_complex& b) { return !(a == b); }
};

inline exact_complex conj(const exact_complex& a) { return {a.re, -a.im}; }
inline rational norm_sq(const exact_complex& a) { return a.re * a.re + a.im * a.im; }
inline bool is_zero(const exact_complex& a) { return a.re == 0 && a.im == 0; }
inline std::complex<double> to_complex(const exact_complex& a) {
    return {to_double(a.re), to_double(a.im)};
}

// "p/q" or "p/q+r/si" (sign folded in, denominators always printed).
inline std::string gaussian_string(const exact_complex& a) {
    if (a.im == 0) return rational_string(a.re);
    std::string s = rational_string(a.re);
    if (a.im > 0) s += "+";
    return s + rational_string(a.im) + "i";
}

inline exact_complex parse_exact_complex(std::string_view text) {
    parsed_gaussian g = parse_gaussian_rational(text);
    return {g.re, g.im};
}

// Three-valued comparison for boundary data. Exact data compares exactly.
// Float data uses a relative tolerance with an indeterminate band: a borderline
// match aborts grouping instead of guessing (the verdict flips on it).
enum class match { equal, unequal, indeterminate };

constexpr double float_match_tol = 1e-9;
constexpr double float_match_band = 1e-6;

template <class C>
struct scalar_ops;

template <>
struct scalar_ops<exact_complex> {
    using real_type = rational;
    static constexpr bool exact = true;

    static exact_complex conjugate(const exact_complex& a) { return conj(a); }
    static rational norm_squared(const exact_complex& a) { return norm_sq(a); }
    static bool zero(const exact_complex& a) { return is_zero(a); }
    static std::complex<double> as_complex(const exact_complex& a) { return to_complex(a); }
    static exact_complex from_int(int n) { return exact_complex(n); }
    static match compare(const exact_complex& a, const exact_complex& b) {
        return a == b ? match::equal : match::unequal;
    }
    static double as_double(const rational& r) { return to_double(r); }
};

template <>
struct scalar_ops<std::complex<double>> {
    using real_type = double;
    static constexpr bool exact = false;

    static std::complex<double> conjugate(const std::complex<double>& a) { return std::conj(a); }
    static double norm_squared(const std::complex<double>& a) { return std::norm(a); }
    static bool zero(const std::complex<double>& a) { return a == 0.0; }
    static std::complex<double> as_complex(const std::complex<double>& a) { return a; }
    static std::complex<double> from_int(int n) { return {double(n), 0.0}; }
    static match compare(const std::complex<double>& a, const std::complex<double>& b) {
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        double d = std::abs(a - b) / scale;
        if (d < float_match_tol) return match::equal;
        if (d > float_match_band) return match::unequal;
        return match::indeterminate;
    }
    static double as_double(double r) { return r; }
};

template <class C>
inline constexpr bool is_exact_v = scalar_ops<C>::exact;

using cnum = std::complex<double>;

} // namespace calkin
