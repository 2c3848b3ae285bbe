#pragma once

#include <cstddef>
#include <vector>

#include "calkin/complex_field.hpp"

namespace calkin {

// Truncated Taylor expansion f(z0 + e) = c[0] + c[1] e + ... + c[L-1] e^{L-1}.
// The expansion point is carried by the caller; jets only see the offset e.
template <class C>
struct jet {
    std::vector<C> c;

    jet() = default;
    explicit jet(std::size_t len) : c(len, C(0)) {}
    jet(std::initializer_list<C> init) : c(init) {}

    std::size_t size() const { return c.size(); }
    const C& operator[](std::size_t k) const { return c[k]; }
    C& operator[](std::size_t k) { return c[k]; }

    static jet constant(const C& v, std::size_t len) {
        jet j(len);
        if (len) j.c[0] = v;
        return j;
    }
    // The offset variable e itself.
    static jet variable(std::size_t len) {
        jet j(len);
        if (len > 1) j.c[1] = C(1);
        return j;
    }
};

template <class C>
jet<C> operator+(const jet<C>& a, const jet<C>& b) {
    jet<C> r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.size(); ++k) r.c[k] += b.c[k];
    return r;
}

template <class C>
jet<C> operator-(const jet<C>& a, const jet<C>& b) {
    jet<C> r(std::max(a.size(), b.size()));
    for (std::size_t k = 0; k < a.size(); ++k) r.c[k] += a.c[k];
    for (std::size_t k = 0; k < b.size(); ++k) r.c[k] -= b.c[k];
    return r;
}

template <class C>
jet<C> mul(const jet<C>& a, const jet<C>& b, std::size_t len) {
    jet<C> r(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (scalar_ops<C>::zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    }
    return r;
}

// a / b truncated; requires b[0] != 0. Iterates over the nonzero denominator
// coefficients only (polynomial jets are mostly padding).
template <class C>
jet<C> div(const jet<C>& a, const jet<C>& b, std::size_t len) {
    if (b.size() == 0 || scalar_ops<C>::zero(b.c[0]))
        throw error(errc::pole_at, "series division by a vanishing denominator");
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k < b.size(); ++k)
        if (!scalar_ops<C>::zero(b.c[k])) support.push_back(k);
    jet<C> r(len);
    for (std::size_t n = 0; n < len; ++n) {
        C acc = n < a.size() ? a.c[n] : C(0);
        for (std::size_t k : support) {
            if (k > n) break;
            acc -= b.c[k] * r.c[n - k];
        }
        r.c[n] = acc / b.c[0];
    }
    return r;
}

// outer(inner(e)) where inner.c[0] has already been subtracted off by the
// caller (outer is expanded at inner's value, so inner must have zero constant
// term here). Horner on truncated series.
template <class C>
jet<C> compose(const jet<C>& outer, const jet<C>& inner, std::size_t len) {
    jet<C> r(len);
    if (outer.size() == 0) return r;
    std::size_t n = outer.size();
    r.c[0] = outer.c[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        r = mul(r, inner, len);
        r.c[0] += outer.c[k];
    }
    return r;
}

} // namespace calkin
