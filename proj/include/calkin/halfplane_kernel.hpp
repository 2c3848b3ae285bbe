#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "calkin/errors.hpp"

namespace calkin {

// Reproducing kernels k_w(z) = (z + conj(w))^{-beta} on the right half-plane,
// for the spaces with <k_w, k_v> = k_w(v) = (v + conj(w))^{-beta}.
struct halfplane_kernel {
    std::complex<double> w; // Re w > 0
    double beta = 1.0;
};

inline std::complex<double> halfplane_kernel_inner(const std::complex<double>& z,
                                                   const std::complex<double>& w, double beta) {
    // <k_z, k_w> = k_z(w) = (w + conj(z))^{-beta}
    return std::pow(w + std::conj(z), -beta);
}

// Gram matrix G[j][l] = <k_{w_l}, k_{w_j}> = (w_j + conj(w_l))^{-beta}.
inline Eigen::MatrixXcd halfplane_kernel_gram(const std::vector<std::complex<double>>& ws,
                                              double beta) {
    for (const auto& w : ws)
        if (w.real() <= 0)
            throw error(errc::argument_not_in_upper_half_plane,
                        "kernel point with non-positive real part", w);
    long n = static_cast<long>(ws.size());
    Eigen::MatrixXcd g(n, n);
    for (long j = 0; j < n; ++j)
        for (long l = 0; l < n; ++l)
            g(j, l) = std::pow(ws[static_cast<std::size_t>(j)] +
                                   std::conj(ws[static_cast<std::size_t>(l)]),
                               -beta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, es.eigenvalues().maxCoeff()))
        throw error(errc::gram_not_psd, "kernel Gram matrix has a significantly negative eigenvalue");
    return g;
}

// ||sum_j coeff_j k_{w_j}||^2 through the Gram matrix; small negative values
// from rounding are clamped to zero.
inline double halfplane_kernel_norm_sq(const std::vector<std::complex<double>>& ws,
                                       const std::vector<std::complex<double>>& coeffs,
                                       double beta) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < ws.size(); ++j) {
        if (ws[j].real() <= 0)
            throw error(errc::argument_not_in_upper_half_plane,
                        "kernel point with non-positive real part", ws[j]);
        for (std::size_t l = 0; l < ws.size(); ++l)
            acc += std::conj(coeffs[j]) * coeffs[l] *
                   std::pow(ws[l] + std::conj(ws[j]), -beta);
    }
    if (acc.real() < -1e-9 * std::max(1.0, std::abs(acc)))
        throw error(errc::gram_not_psd, "kernel quadratic form evaluated significantly negative");
    return std::max(0.0, acc.real());
}

// Closed form for beta = 1:
// ||k_z - k_w||^2 = |(z-w)/(z+conj(w))|^2 (1/(2 Re z) + 1/(2 Re w)).
inline double halfplane_kernel_diff_norm_beta1(const std::complex<double>& z,
                                               const std::complex<double>& w) {
    if (z.real() <= 0 || w.real() <= 0)
        throw error(errc::argument_not_in_upper_half_plane,
                    "kernel point with non-positive real part", z.real() <= 0 ? z : w);
    double q = std::norm((z - w) / (z + std::conj(w)));
    return q * (1.0 / (2.0 * z.real()) + 1.0 / (2.0 * w.real()));
}

} // namespace calkin
