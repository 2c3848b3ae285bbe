#pragma once

#include "calkin/fft.hpp"
#include "calkin/selfmap.hpp"

namespace calkin {

namespace detail {

// Coefficients of a float composite by Fourier sampling on |z| = r with
// de-aliasing: 4N samples and r^{3N} = 1e-20 keep the aliasing tail below the
// rounding amplification r^{-n}.
inline std::vector<cnum> taylor_by_sampling(const float_map& m, int n_coeffs) {
    std::size_t n = static_cast<std::size_t>(n_coeffs);
    std::size_t samples = next_pow2(4 * n);
    double r = std::exp(-20.0 * std::numbers::ln10 / (3.0 * double(n)));
    double alias = std::pow(r, double(samples) - double(n));
    double noise = 2.2e-16 / std::pow(r, double(n));
    if (alias + noise > 1e-8)
        throw error(errc::precision_budget_exceeded,
                    "sampling radius cannot meet the coefficient accuracy budget");
    std::vector<cnum> g(samples);
    for (std::size_t k = 0; k < samples; ++k)
        g[k] = m.eval(std::polar(r, 2.0 * std::numbers::pi * double(k) / double(samples)));
    fft_radix2(g, true); // (1/M) sum g_k w^{-nk}
    std::vector<cnum> out(n);
    double rn = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = g[j] / rn;
        rn *= r;
    }
    return out;
}

} // namespace detail

// First N Taylor coefficients of phi at the origin. Linear fractional and
// rational maps use the exact division recurrence (closed-form geometric
// series in the LFT case); exact composites are flattened first; float
// composites fall back to Fourier sampling.
template <class C>
std::vector<C> taylor_coefficients(const self_map<C>& m, int n_coeffs) {
    if (n_coeffs <= 0) throw error(errc::parse_error, "coefficient count must be positive");
    if (m.variant() == self_map<C>::kind::composite) {
        if constexpr (is_exact_v<C>) {
            return taylor_coefficients(flattened(m), n_coeffs);
        } else {
            return detail::taylor_by_sampling(m, n_coeffs);
        }
    }
    return m.jet_at(C(0), static_cast<std::size_t>(n_coeffs)).c;
}

} // namespace calkin
