#pragma once

#include <vector>

namespace subdiff {

/// Weakly singular kernel xi_gamma(t) = t^{gamma-1} / Gamma(gamma).
///
/// Throws std::domain_error for t <= 0 (the kernel is singular or
/// undefined there) and std::invalid_argument for gamma <= 0.
double kernel_xi(double gamma, double t);

/// Hybrid time grid: graded points on [0, T0], uniform points on [T0, T].
///
/// t_k = T0 (k/M0)^r for k = 0..M0, then t_{M0+k} = T0 + k*tau_tilde with
/// tau_tilde = (T - T0)/(M - M0).  Points are evaluated from the closed
/// form (not cumulatively) and the two segment endpoints are exact.
struct TimeMesh {
    double T = 0.0;
    double T0 = 0.0;
    int M = 0;
    int M0 = 0;
    double r = 1.0;
    double tau_tilde = 0.0;
    std::vector<double> points;  // t_0..t_M
    std::vector<double> steps;   // tau_1..tau_M

    double t(int k) const { return points[static_cast<std::size_t>(k)]; }
    /// Step tau_k = t_k - t_{k-1}, 1-based k.
    double tau(int k) const { return steps[static_cast<std::size_t>(k - 1)]; }
};

/// Build the hybrid mesh.  Requires 0 < T0 < T, 1 <= M0 < M, r >= 1.
TimeMesh build_mesh(double T, double T0, int M, int M0, double r);

struct MeshSplit {
    double T0 = 0.0;
    int M0 = 0;
};

/// Default split recipe: T0 = 2^{-r}, M0 = ceil(r M / (2^r - 1 + r)),
/// with M0 clamped to [1, M-1] so tiny M cannot degenerate the mesh.
MeshSplit default_split(int M, double r);

}  // namespace subdiff
