#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <random>

#include "calkin/relations.hpp"
#include "calkin/taylor.hpp"

namespace calkin {

// N x N compression of sum_j c_j C_{phi_j} to the span of the first N
// monomials of the space: column m holds the coefficients of
// sum_j c_j phi_j(z)^m, scaled by the monomial norm ratios
// ||z^n|| / ||z^m||, with ||z^n||^2 = n! Gamma(beta) / Gamma(n + beta).
struct finite_section_matrix {
    int n = 0;
    double beta = 1.0;
    Eigen::MatrixXcd t;
};

namespace detail {

// ||z^n||_beta, via ||z^n||^2 / ||z^{n-1}||^2 = n / (n + beta - 1).
inline std::vector<double> monomial_norms(int n, double beta) {
    std::vector<double> r(static_cast<std::size_t>(n), 1.0);
    for (int k = 1; k < n; ++k)
        r[static_cast<std::size_t>(k)] =
            r[static_cast<std::size_t>(k - 1)] * std::sqrt(double(k) / (double(k) + beta - 1.0));
    return r;
}

// col <- col * phi (coefficient convolution truncated to n), direct O(n^2).
inline void truncated_mul(std::vector<cnum>& col, const std::vector<cnum>& phi) {
    std::size_t n = col.size();
    std::vector<cnum> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (col[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < n && j < phi.size(); ++j) out[i + j] += col[i] * phi[j];
    }
    col = std::move(out);
}

// Same through length-2n FFTs against a precomputed transform of phi.
struct fft_multiplier {
    std::size_t n, size;
    std::vector<cnum> phi_hat;

    fft_multiplier(const std::vector<cnum>& phi, std::size_t n_) : n(n_), size(next_pow2(2 * n_)) {
        phi_hat.assign(size, 0.0);
        std::copy(phi.begin(), phi.begin() + static_cast<long>(std::min(phi.size(), n)),
                  phi_hat.begin());
        fft_radix2(phi_hat, false);
    }
    void apply(std::vector<cnum>& col) const {
        std::vector<cnum> buf(size, 0.0);
        std::copy(col.begin(), col.end(), buf.begin());
        fft_radix2(buf, false);
        for (std::size_t k = 0; k < size; ++k) buf[k] *= phi_hat[k];
        fft_radix2(buf, true);
        std::copy(buf.begin(), buf.begin() + static_cast<long>(n), col.begin());
    }
};

} // namespace detail

template <class C>
finite_section_matrix finite_section(const combination<C>& comb, int n) {
    if (n < 16) throw error(errc::parse_error, "finite sections need N >= 16");
    finite_section_matrix fs;
    fs.n = n;
    fs.beta = comb.space.beta;
    fs.t = Eigen::MatrixXcd::Zero(n, n);
    std::vector<double> norms = detail::monomial_norms(n, fs.beta);
    std::size_t nn = static_cast<std::size_t>(n);
    for (std::size_t j = 0; j < comb.maps.size(); ++j) {
        cnum cj = scalar_ops<C>::as_complex(comb.coefficients[j]);
        if (cj == 0.0) continue;
        // the section lives in double anyway; build the column chain there
        std::vector<cnum> phi = taylor_coefficients(detail::to_float_any(comb.maps[j]), n);

        std::vector<cnum> col(nn, 0.0);
        col[0] = 1.0; // phi^0
        std::optional<detail::fft_multiplier> fastpath;
        if (n >= 1024) fastpath.emplace(phi, nn);
        for (int m = 0; m < n; ++m) {
            for (int row = 0; row < n; ++row)
                fs.t(row, m) += cj * col[static_cast<std::size_t>(row)] *
                                (norms[static_cast<std::size_t>(row)] /
                                 norms[static_cast<std::size_t>(m)]);
            if (m + 1 < n) {
                if (fastpath)
                    fastpath->apply(col);
                else
                    detail::truncated_mul(col, phi);
            }
        }
    }
    return fs;
}

// Largest k singular values by Lanczos iteration on T* T with full
// reorthogonalization; the top of the spectrum is the converging end, which is
// all these estimates need.
inline std::vector<double> top_singular_values(const Eigen::MatrixXcd& t, int k) {
    long n = t.rows();
    k = std::min<long>(k, n);
    if (t.norm() == 0.0) return std::vector<double>(static_cast<std::size_t>(k), 0.0);
    // the plateau of singular values near the essential norm is badly
    // clustered, which slows Lanczos; be generous with the step count
    long steps = std::min(n, 12L * k + 120);
    Eigen::MatrixXcd basis(n, steps);
    Eigen::VectorXd alpha(steps), beta(steps);
    std::mt19937_64 rng(0x5eedf00dULL);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i) v(i) = cnum(gauss(rng), gauss(rng));
    v.normalize();
    Eigen::VectorXcd prev = Eigen::VectorXcd::Zero(n);
    double beta_prev = 0.0;
    long done = 0;
    for (long j = 0; j < steps; ++j) {
        basis.col(j) = v;
        Eigen::VectorXcd w = t.adjoint() * (t * v) - beta_prev * prev;
        alpha(j) = std::real(v.dot(w));
        w -= alpha(j) * v;
        // full reorthogonalization, twice
        for (int pass = 0; pass < 2; ++pass)
            w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
        beta_prev = w.norm();
        done = j + 1;
        if (beta_prev < 1e-14) break;
        beta(j) = beta_prev;
        prev = basis.col(j);
        v = w / beta_prev;
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(done, done);
    for (long j = 0; j < done; ++j) {
        tri(j, j) = alpha(j);
        if (j + 1 < done) tri(j, j + 1) = tri(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (long i = es.eigenvalues().size() - 1; i >= 0 && out.size() < std::size_t(k); --i)
        out.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    while (out.size() < std::size_t(k)) out.push_back(0.0);
    return out;
}

inline double operator_norm_estimate(const finite_section_matrix& fs) {
    return top_singular_values(fs.t, 1)[0];
}

// (skip+1)-th singular value: a heuristic essential-norm proxy, never a proof.
inline double singular_tail(const finite_section_matrix& fs, int skip) {
    if (skip < 0 || skip >= fs.n)
        throw error(errc::parse_error, "singular_tail skip out of range");
    return top_singular_values(fs.t, skip + 1)[static_cast<std::size_t>(skip)];
}

} // namespace calkin
