#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "calkin/jet.hpp"

namespace calkin {

// Analytic self-map of the unit disk: a linear fractional map (az+b)/(cz+d),
// a rational map num/den in ascending coefficients, or a composition
// outer∘inner. Compositions of linear fractional maps collapse to a single
// linear fractional map at construction (exact matrix product).
template <class C>
class self_map {
  public:
    enum class kind { linear_fractional, rational_quotient, composite };
    static constexpr int max_composite_depth = 8;

    self_map() : kind_(kind::linear_fractional), coeffs_{C(1), C(0), C(0), C(1)} {}

    static self_map linear_fractional(C a, C b, C c, C d) {
        self_map m;
        m.kind_ = kind::linear_fractional;
        m.coeffs_ = {std::move(a), std::move(b), std::move(c), std::move(d)};
        m.canonicalize();
        return m;
    }

    static self_map rational(std::vector<C> num, std::vector<C> den) {
        trim(num);
        trim(den);
        if (den.empty())
            throw error(errc::parse_error, "rational map with identically zero denominator");
        if (num.empty()) num.push_back(C(0));
        self_map m;
        m.kind_ = kind::rational_quotient;
        m.num_ = std::move(num);
        m.den_ = std::move(den);
        return m;
    }

    static self_map composed(self_map outer, self_map inner) {
        if (outer.kind_ == kind::linear_fractional && inner.kind_ == kind::linear_fractional) {
            const auto& p = outer.coeffs_;
            const auto& q = inner.coeffs_;
            return linear_fractional(p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
                                     p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]);
        }
        self_map m;
        m.kind_ = kind::composite;
        m.outer_ = std::make_shared<self_map>(std::move(outer));
        m.inner_ = std::make_shared<self_map>(std::move(inner));
        if (m.composite_depth() > max_composite_depth)
            throw error(errc::parse_error, "composite nesting deeper than 8");
        return m;
    }

    kind variant() const { return kind_; }
    const C& a() const { return coeffs_[0]; }
    const C& b() const { return coeffs_[1]; }
    const C& c() const { return coeffs_[2]; }
    const C& d() const { return coeffs_[3]; }
    const std::vector<C>& num() const { return num_; }
    const std::vector<C>& den() const { return den_; }
    const self_map& outer() const { return *outer_; }
    const self_map& inner() const { return *inner_; }

    bool is_linear_fractional() const { return kind_ == kind::linear_fractional; }

    // num/den view of a non-composite map.
    std::pair<std::vector<C>, std::vector<C>> fraction() const {
        if (kind_ == kind::linear_fractional)
            return {poly_trimmed({coeffs_[1], coeffs_[0]}), poly_trimmed({coeffs_[3], coeffs_[2]})};
        if (kind_ == kind::rational_quotient) return {num_, den_};
        throw error(errc::parse_error, "composite map has no direct fraction form");
    }

    int composite_depth() const {
        if (kind_ != kind::composite) return 1;
        return 1 + std::max(outer_->composite_depth(), inner_->composite_depth());
    }

    C eval(const C& z) const {
        switch (kind_) {
            case kind::linear_fractional: {
                C den = coeffs_[2] * z + coeffs_[3];
                if (scalar_ops<C>::zero(den))
                    throw error(errc::pole_at, "evaluation at a pole",
                                scalar_ops<C>::as_complex(z));
                return (coeffs_[0] * z + coeffs_[1]) / den;
            }
            case kind::rational_quotient: {
                C d = poly_eval(den_, z);
                if (scalar_ops<C>::zero(d))
                    throw error(errc::pole_at, "evaluation at a pole",
                                scalar_ops<C>::as_complex(z));
                return poly_eval(num_, z) / d;
            }
            case kind::composite: return outer_->eval(inner_->eval(z));
        }
        return C(0);
    }

    // Taylor expansion of the map at z0, length `len` (value, f', f''/2!, ...).
    jet<C> jet_at(const C& z0, std::size_t len) const {
        switch (kind_) {
            case kind::linear_fractional: {
                jet<C> n = poly_jet({coeffs_[1], coeffs_[0]}, z0, len);
                jet<C> d = poly_jet({coeffs_[3], coeffs_[2]}, z0, len);
                return div(n, d, len);
            }
            case kind::rational_quotient:
                return div(poly_jet(num_, z0, len), poly_jet(den_, z0, len), len);
            case kind::composite: {
                jet<C> g = inner_->jet_at(z0, len);
                C w0 = g.c[0];
                g.c[0] = C(0);
                jet<C> f = outer_->jet_at(w0, len);
                return compose(f, g, len);
            }
        }
        return jet<C>(len);
    }

    // phi^{(order)}(z), exact when C is exact.
    C derivative(const C& z, int order) const {
        jet<C> j = jet_at(z, static_cast<std::size_t>(order) + 1);
        C f(1);
        for (int k = 2; k <= order; ++k) f *= C(k);
        return j.c[static_cast<std::size_t>(order)] * f;
    }

    friend bool operator==(const self_map& x, const self_map& y) {
        if (x.kind_ != y.kind_) return false;
        switch (x.kind_) {
            case kind::linear_fractional: return x.coeffs_ == y.coeffs_;
            case kind::rational_quotient: return x.num_ == y.num_ && x.den_ == y.den_;
            case kind::composite: return *x.outer_ == *y.outer_ && *x.inner_ == *y.inner_;
        }
        return false;
    }

    static C poly_eval(const std::vector<C>& p, const C& z) {
        C r(0);
        for (std::size_t k = p.size(); k-- > 0;) r = r * z + p[k];
        return r;
    }

    static jet<C> poly_jet(const std::vector<C>& p, const C& z0, std::size_t len) {
        jet<C> r(len);
        jet<C> lin(std::min<std::size_t>(len, 2));
        lin.c[0] = z0;
        if (len > 1) lin.c[1] = C(1);
        for (std::size_t k = p.size(); k-- > 0;) {
            r = mul(r, lin, len);
            r.c[0] += p[k];
        }
        return r;
    }

  private:
    static void trim(std::vector<C>& p) {
        while (!p.empty() && scalar_ops<C>::zero(p.back())) p.pop_back();
    }
    static std::vector<C> poly_trimmed(std::vector<C> p) {
        trim(p);
        if (p.empty()) p.push_back(C(0));
        return p;
    }

    // d = 1 when d != 0, else c = 1; makes map identity decidable.
    void canonicalize() {
        if (!scalar_ops<C>::zero(coeffs_[3])) {
            C d = coeffs_[3];
            for (auto& x : coeffs_) x = x / d;
        } else if (!scalar_ops<C>::zero(coeffs_[2])) {
            C c = coeffs_[2];
            for (auto& x : coeffs_) x = x / c;
        }
    }

    kind kind_;
    std::vector<C> coeffs_ = std::vector<C>(4, C(0)); // lft: a,b,c,d
    std::vector<C> num_, den_;                        // rational
    std::shared_ptr<const self_map> outer_, inner_;   // composite
};

using exact_map = self_map<exact_complex>;
using float_map = self_map<cnum>;

inline float_map to_float(const exact_map& m) {
    using K = exact_map::kind;
    switch (m.variant()) {
        case K::linear_fractional:
            return float_map::linear_fractional(to_complex(m.a()), to_complex(m.b()),
                                                to_complex(m.c()), to_complex(m.d()));
        case K::rational_quotient: {
            std::vector<cnum> n, d;
            for (const auto& x : m.num()) n.push_back(to_complex(x));
            for (const auto& x : m.den()) d.push_back(to_complex(x));
            return float_map::rational(std::move(n), std::move(d));
        }
        case K::composite: return float_map::composed(to_float(m.outer()), to_float(m.inner()));
    }
    return {};
}

inline float_map to_float(const float_map& m) { return m; }

// Polynomial composition p(q(z)) and friends, used to flatten exact composites.
template <class C>
std::vector<C> poly_mul(const std::vector<C>& p, const std::vector<C>& q) {
    std::vector<C> r(p.size() + q.size() - 1, C(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

template <class C>
std::vector<C> poly_pow(const std::vector<C>& p, std::size_t k) {
    std::vector<C> r{C(1)};
    for (std::size_t i = 0; i < k; ++i) r = poly_mul(r, p);
    return r;
}

// phi = p/q composed with psi = r/s as a single fraction:
//   p(r/s)/q(r/s) = sum p_k r^k s^{D-k} / sum q_k r^k s^{D-k},  D = max degree.
template <class C>
self_map<C> flattened(const self_map<C>& m) {
    using K = typename self_map<C>::kind;
    if (m.variant() != K::composite) return m;
    self_map<C> fo = flattened(m.outer());
    self_map<C> fi = flattened(m.inner());
    auto [p, q] = fo.fraction();
    auto [r, s] = fi.fraction();
    std::size_t deg = std::max(p.size(), q.size()) - 1;
    std::vector<std::vector<C>> rs(deg + 1), sd(deg + 1);
    rs[0] = {C(1)};
    sd[0] = {C(1)};
    for (std::size_t k = 1; k <= deg; ++k) {
        rs[k] = poly_mul(rs[k - 1], r);
        sd[k] = poly_mul(sd[k - 1], s);
    }
    auto assemble = [&](const std::vector<C>& coef) {
        std::vector<C> acc{C(0)};
        for (std::size_t k = 0; k < coef.size(); ++k) {
            std::vector<C> term = poly_mul(rs[k], sd[deg - k]);
            if (term.size() > acc.size()) acc.resize(term.size(), C(0));
            for (std::size_t j = 0; j < term.size(); ++j) acc[j] += coef[k] * term[j];
        }
        return acc;
    };
    return self_map<C>::rational(assemble(p), assemble(q));
}

} // namespace calkin
