// Test-only oracles. Everything here recomputes quantities through
// routes independent of the library implementation: a hand-rolled
// cyclic Jacobi eigensolver for Hermitian matrices (no Eigen
// decompositions), and correlation coefficients via explicitly
// materialized Kronecker words.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "gme/states.hpp"
#include "gme/types.hpp"

namespace oracles {

using gme::cx;

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
inline std::vector<double> hermitian_eigenvalues(std::vector<std::vector<cx>> a) {
    const int n = static_cast<int>(a.size());
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(a[p][q]);
        if (off < 1e-28) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double beta = std::abs(a[p][q]);
                if (beta < 1e-300) continue;
                cx phase = a[p][q] / beta;  // e^{i theta}
                double alpha = a[p][p].real();
                double gamma = a[q][q].real();

                // eigen-pair of the phased-out real 2x2 block
                double mean = 0.5 * (alpha + gamma);
                double halfdiff = 0.5 * (alpha - gamma);
                double r = std::hypot(halfdiff, beta);
                double lam_plus = mean + r;
                double lam_minus = mean - r;
                double c1 = beta, s1 = lam_plus - alpha;
                double nrm = std::hypot(c1, s1);
                if (nrm == 0) continue;
                c1 /= nrm;
                s1 /= nrm;

                cx u10 = std::conj(phase) * s1;
                cx u11 = std::conj(phase) * c1;
                for (int rr = 0; rr < n; ++rr) {
                    if (rr == p || rr == q) continue;
                    cx ap = a[rr][p], aq = a[rr][q];
                    a[rr][p] = ap * c1 + aq * u10;
                    a[rr][q] = -ap * s1 + aq * u11;
                    a[p][rr] = std::conj(a[rr][p]);
                    a[q][rr] = std::conj(a[rr][q]);
                }
                a[p][p] = lam_plus;
                a[q][q] = lam_minus;
                a[p][q] = a[q][p] = 0;
            }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a[i][i].real();
    return eig;
}

// Trace norm as tr sqrt(M M^dag) through the Jacobi route.
inline double trace_norm(const gme::Matrix& m) {
    const gme::Matrix h =
        (m.rows() <= m.cols()) ? (m * m.adjoint()).eval() : (m.adjoint() * m).eval();
    const int n = static_cast<int>(h.rows());
    std::vector<std::vector<cx>> a(n, std::vector<cx>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a[r][c] = h(r, c);
    double sum = 0;
    for (double lam : hermitian_eigenvalues(std::move(a)))
        sum += std::sqrt(std::max(0.0, lam));
    return sum;
}

// Weyl operator built from scratch (matrix units and explicit phases).
inline gme::Matrix weyl_matrix(int d, int i, int j) {
    gme::Matrix A = gme::Matrix::Zero(d, d);
    const double two_pi = 6.283185307179586476925286766559;
    for (int m = 0; m < d; ++m)
        A(m, (m + j) % d) += std::polar(1.0, two_pi * ((i * m) % d) / d);
    return A;
}

inline gme::Matrix kron(const gme::Matrix& a, const gme::Matrix& b) {
    gme::Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// tr(rho (A_1 x ... x A_n)^dag) with one Weyl code per party
// (code pair (0,0) = identity), via the materialized Kronecker word.
inline cx correlation_coefficient(const gme::DensityMatrix& rho,
                                  const std::vector<std::pair<int, int>>& ij_per_party) {
    gme::Matrix word = gme::Matrix::Identity(1, 1);
    for (int p = 0; p < rho.system.parties(); ++p)
        word = kron(word, weyl_matrix(rho.system.dims[p], ij_per_party[p].first,
                                      ij_per_party[p].second));
    return (rho.entries * word.adjoint()).trace();
}

}  // namespace oracles
