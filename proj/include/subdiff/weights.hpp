#pragma once

#include <vector>

#include "subdiff/time_mesh.hpp"

namespace subdiff {

/// All quadrature coefficients of the time-discretization matrix A for a
/// hybrid mesh, stored in the 2x2 block layout used by the solvers:
///
///   A = [ A11   0  ]     A11: dense lower-triangular (graded rows)
///       [ A21  A22 ]     A21: dense coupling block
///                        A22: lower-triangular Toeplitz, generator omega
///
/// eta holds the multipliers of the initial value in the right-hand side,
/// a0 the main-diagonal coefficients of every row.
struct WeightTable {
    double beta = 0.0;
    int M = 0;
    int M0 = 0;
    std::vector<double> a11;    // M0 x M0, row-major, zero above the diagonal
    std::vector<double> a21;    // (M - M0) x M0, row-major
    std::vector<double> omega;  // omega_0 .. omega_{M-M0-1}
    std::vector<double> eta;    // coefficient of u^0 in row k, k = 1..M
    std::vector<double> a0;     // main-diagonal coefficient of row k, k = 1..M

    /// A11 entry, 1-based indices, 1 <= l <= k <= M0.
    double a11_at(int k, int l) const {
        return a11[static_cast<std::size_t>(k - 1) * M0 + (l - 1)];
    }
    /// A21 entry; row k in M0+1..M, column l in 1..M0.
    double a21_at(int k, int l) const {
        return a21[static_cast<std::size_t>(k - M0 - 1) * M0 + (l - 1)];
    }
    /// Any entry of the full lower-triangular A, 1-based, l <= k.
    double entry(int k, int l) const {
        if (k <= M0) return a11_at(k, l);
        if (l <= M0) return a21_at(k, l);
        return omega[static_cast<std::size_t>(k - l)];
    }
};

/// Row-k quadrature weights on the given mesh:
/// w[l-1] = a_{k-l}^{(k)} = [xi_{2-beta}(t_k - t_{l-1}) - xi_{2-beta}(t_k - t_l)] / tau_l
/// for l = 1..k, with xi_{2-beta}(0) = 0.
std::vector<double> graded_weights(const TimeMesh& mesh, double beta, int k);

/// Uniform-mesh weight differences omega_0..omega_{n-1}:
/// b_l = tau^{-beta}/Gamma(2-beta) [(l+1)^{1-beta} - l^{1-beta}],
/// omega_0 = b_0, omega_l = b_l - b_{l-1}.
std::vector<double> uniform_weights(double beta, double tau_tilde, int n);

/// Plain b_0..b_{n-1} (monotone decreasing, positive).
std::vector<double> uniform_b(double beta, double tau_tilde, int n);

WeightTable assemble_weight_table(const TimeMesh& mesh, double beta);

}  // namespace subdiff
