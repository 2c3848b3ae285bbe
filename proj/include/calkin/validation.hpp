#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "calkin/disk_geometry.hpp"

namespace calkin {

enum class verdict { pass, fail, indeterminate };

struct validation_report {
    verdict result = verdict::fail;
    bool is_automorphism = false;
    bool boundary_contact = false; // sup |phi| on the circle equals 1
    double sup_modulus = 0.0;      // numeric estimate of ||phi||_inf
    std::string certificate;       // "exact-image-disk" or "numeric-sampling"
    std::optional<cnum> witness;
    std::optional<errc> failure;
    std::string detail;

    bool passed() const { return result == verdict::pass; }
};

namespace detail {

inline std::vector<cnum> polynomial_roots(const std::vector<cnum>& p) {
    std::size_t deg = p.size();
    while (deg > 1 && std::abs(p[deg - 1]) == 0.0) --deg;
    if (deg <= 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg - 1, deg - 1);
    for (std::size_t i = 0; i + 1 < deg - 1; ++i) companion(i + 1, i) = 1.0;
    for (std::size_t i = 0; i < deg - 1; ++i) companion(i, deg - 2) = -p[i] / p[deg - 1];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<cnum> roots(deg - 1);
    for (std::size_t i = 0; i < deg - 1; ++i) roots[i] = es.eigenvalues()(static_cast<long>(i));
    return roots;
}

// Poles of a non-composite float map inside / on the closed disk.
inline std::optional<cnum> pole_in_closed_disk(const float_map& m) {
    if (m.variant() == float_map::kind::composite) return std::nullopt;
    auto [num, den] = m.fraction();
    for (const cnum& r : polynomial_roots(den)) {
        if (std::abs(r) <= 1.0 + 1e-10) {
            // A nearby zero of the numerator means a removable singularity.
            if (std::abs(float_map::poly_eval(num, r)) < 1e-9) continue;
            return r;
        }
    }
    return std::nullopt;
}

constexpr int validation_boundary_samples = 4096;
constexpr int validation_interior_samples = 512;

} // namespace detail

// Numeric certificate: boundary sampling plus an interior max-modulus probe.
inline validation_report validate_numeric(const float_map& m) {
    validation_report rep;
    rep.certificate = "numeric-sampling";
    if (m.variant() == float_map::kind::composite) {
        validation_report inner = validate_numeric(m.inner());
        if (!inner.passed()) return inner;
        validation_report outer = validate_numeric(m.outer());
        if (!outer.passed()) return outer;
    } else if (auto pole = detail::pole_in_closed_disk(m)) {
        rep.failure = errc::pole_in_closed_disk;
        rep.witness = *pole;
        rep.detail = "denominator root in the closed disk";
        return rep;
    }

    const int n = detail::validation_boundary_samples;
    double max_sq = 0.0;
    int arc_run = 0, longest_arc = 0;
    cnum worst = 1.0;
    for (int k = 0; k < n; ++k) {
        double theta = 2.0 * std::numbers::pi * (k + 0.5) / n;
        cnum z = std::polar(1.0, theta);
        double v = std::norm(m.eval(z));
        if (v > max_sq) {
            max_sq = v;
            worst = z;
        }
        if (1.0 - v < 1e-12) {
            longest_arc = std::max(longest_arc, ++arc_run);
        } else {
            arc_run = 0;
        }
    }
    rep.sup_modulus = std::sqrt(std::max(0.0, max_sq));
    if (max_sq > 1.0 + 1e-10) {
        rep.failure = errc::not_self_map;
        rep.witness = worst;
        rep.detail = "boundary sample with |phi| > 1";
        return rep;
    }
    if (longest_arc >= 256) {
        rep.failure = errc::boundary_arc_contact;
        rep.witness = worst;
        rep.detail = "|phi| = 1 on an arc of positive measure";
        return rep;
    }
    if (max_sq > 1.0 + 2e-13) {
        rep.result = verdict::indeterminate;
        rep.witness = worst;
        rep.detail = "boundary modulus within tolerance of 1";
        return rep;
    }

    // Sunflower-pattern interior probe.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 1; k <= detail::validation_interior_samples; ++k) {
        double r = 0.999 * std::sqrt(double(k) / detail::validation_interior_samples);
        cnum z = std::polar(r, 2.0 * std::numbers::pi * std::fmod(k / golden, 1.0));
        double v = std::abs(m.eval(z));
        if (v > 1.0 + 1e-12) {
            rep.failure = errc::not_self_map;
            rep.witness = z;
            rep.detail = "interior point with |phi| > 1";
            return rep;
        }
    }
    rep.result = verdict::pass;
    // informational estimate; tangential contacts leave the half-offset grid
    // a few 1e-6 short of one
    rep.boundary_contact = max_sq > 1.0 - 1e-4;
    return rep;
}

// Exact algebra for a linear fractional map (az+b)/(cz+d). On |z| = 1,
//   |cz+d|^2 - |az+b|^2 = B + 2 Re(A z),  A = c conj(d) - a conj(b),
//   B = |c|^2 + |d|^2 - |a|^2 - |b|^2,
// so the map sends D into D iff B >= 2|A|, with tangential contact iff
// B^2 = 4|A|^2, at the double root zeta = -B / (2A).
struct lft_disk_algebra {
    exact_complex a_coeff; // A above
    rational b_coeff;      // B above
    bool constant_map = false;
    exact_complex constant_value;

    static lft_disk_algebra of(const exact_map& m) {
        lft_disk_algebra r;
        const exact_complex &a = m.a(), &b = m.b(), &c = m.c(), &d = m.d();
        if (is_zero(a * d - b * c)) {
            r.constant_map = true;
            r.constant_value = is_zero(d) ? a / c : b / d;
            return r;
        }
        r.a_coeff = c * conj(d) - a * conj(b);
        r.b_coeff = norm_sq(c) + norm_sq(d) - norm_sq(a) - norm_sq(b);
        return r;
    }

    bool is_automorphism() const {
        return !constant_map && is_zero(a_coeff) && b_coeff == 0;
    }
    bool is_self_map() const {
        if (constant_map) return norm_sq(constant_value) <= 1;
        return b_coeff >= 0 && b_coeff * b_coeff >= 4 * norm_sq(a_coeff);
    }
    bool has_contact() const {
        if (constant_map) return norm_sq(constant_value) == 1;
        if (is_automorphism()) return true;
        return b_coeff * b_coeff == 4 * norm_sq(a_coeff);
    }
    // Valid when has_contact() and not an automorphism or constant.
    exact_complex contact_point() const {
        return exact_complex(-b_coeff) / (exact_complex(2) * a_coeff);
    }
};

inline validation_report validate_self_map(const exact_map& m) {
    if (m.variant() != exact_map::kind::linear_fractional) {
        validation_report rep = validate_numeric(to_float(m));
        return rep;
    }
    validation_report rep;
    rep.certificate = "exact-image-disk";
    lft_disk_algebra alg = lft_disk_algebra::of(m);
    if (alg.constant_map) {
        rational v = norm_sq(alg.constant_value);
        if (v < 1) {
            rep.result = verdict::pass;
            rep.sup_modulus = std::sqrt(to_double(v));
        } else if (v == 1) {
            rep.failure = errc::boundary_arc_contact;
            rep.detail = "constant map of modulus one";
        } else {
            rep.failure = errc::not_self_map;
            rep.witness = cnum(0.0, 0.0);
            rep.detail = "constant map of modulus > 1";
        }
        return rep;
    }
    if (!is_zero(m.c())) {
        exact_complex pole = -m.d() / m.c();
        if (norm_sq(pole) <= 1) {
            rep.failure = errc::pole_in_closed_disk;
            rep.witness = to_complex(pole);
            rep.detail = "pole of the linear fractional map in the closed disk";
            return rep;
        }
    }
    if (alg.is_automorphism()) {
        rep.result = verdict::pass;
        rep.is_automorphism = true;
        rep.boundary_contact = true;
        rep.sup_modulus = 1.0;
        rep.detail = "disk automorphism (violates the a.e. boundary assumption downstream)";
        return rep;
    }
    if (!alg.is_self_map()) {
        rep.failure = errc::not_self_map;
        cnum A = to_complex(alg.a_coeff);
        rep.witness = std::abs(A) > 0 ? -std::conj(A) / std::abs(A) : cnum(1.0, 0.0);
        rep.detail = "image disk not contained in the closed unit disk";
        return rep;
    }
    rep.result = verdict::pass;
    rep.boundary_contact = alg.has_contact();
    rep.sup_modulus = rep.boundary_contact ? 1.0 : validate_numeric(to_float(m)).sup_modulus;
    return rep;
}

inline validation_report validate_self_map(const float_map& m) { return validate_numeric(m); }

// Gate form: passes silently, throws the report's failure otherwise.
template <class C>
void require_valid_self_map(const self_map<C>& m) {
    validation_report rep = validate_self_map(m);
    if (rep.passed()) return;
    errc code = rep.result == verdict::indeterminate ? errc::indeterminate
                                                     : rep.failure.value_or(errc::not_self_map);
    if (rep.witness) throw error(code, rep.detail, *rep.witness);
    throw error(code, rep.detail);
}

} // namespace calkin
