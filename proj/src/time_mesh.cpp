#include "subdiff/time_mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subdiff {

double kernel_xi(double gamma, double t) {
    if (!(gamma > 0.0)) throw std::invalid_argument("kernel_xi: gamma must be positive");
    if (!(t > 0.0)) throw std::domain_error("kernel_xi: t must be positive");
    return std::pow(t, gamma - 1.0) / std::tgamma(gamma);
}

TimeMesh build_mesh(double T, double T0, int M, int M0, double r) {
    if (!(T0 > 0.0) || !(T0 < T))
        throw std::invalid_argument("build_mesh: need 0 < T0 < T");
    if (M0 < 1 || M0 >= M)
        throw std::invalid_argument("build_mesh: need 1 <= M0 < M");
    if (!(r >= 1.0)) throw std::invalid_argument("build_mesh: need r >= 1");

    TimeMesh mesh;
    mesh.T = T;
    mesh.T0 = T0;
    mesh.M = M;
    mesh.M0 = M0;
    mesh.r = r;
    mesh.tau_tilde = (T - T0) / (M - M0);
    mesh.points.resize(static_cast<std::size_t>(M) + 1);

    // Closed-form evaluation avoids cumulative drift; the segment
    // endpoints are pinned exactly.
    mesh.points[0] = 0.0;
    for (int k = 1; k < M0; ++k)
        mesh.points[static_cast<std::size_t>(k)] =
            T0 * std::pow(static_cast<double>(k) / M0, r);
    mesh.points[static_cast<std::size_t>(M0)] = T0;
    for (int k = 1; k < M - M0; ++k)
        mesh.points[static_cast<std::size_t>(M0 + k)] = T0 + k * mesh.tau_tilde;
    mesh.points[static_cast<std::size_t>(M)] = T;

    mesh.steps.resize(static_cast<std::size_t>(M));
    for (int k = 1; k <= M; ++k) {
        double tau = mesh.points[static_cast<std::size_t>(k)] -
                     mesh.points[static_cast<std::size_t>(k - 1)];
        if (!(tau > 0.0))
            throw std::invalid_argument("build_mesh: degenerate step at k=" +
                                        std::to_string(k));
        mesh.steps[static_cast<std::size_t>(k - 1)] = tau;
    }
    return mesh;
}

MeshSplit default_split(int M, double r) {
    if (M < 2) throw std::invalid_argument("default_split: need M >= 2");
    if (!(r >= 1.0)) throw std::invalid_argument("default_split: need r >= 1");
    MeshSplit s;
    s.T0 = std::pow(2.0, -r);
    double ratio = r / (std::pow(2.0, r) - 1.0 + r);
    int m0 = static_cast<int>(std::ceil(ratio * M));
    if (m0 < 1) m0 = 1;
    if (m0 > M - 1) m0 = M - 1;
    s.M0 = m0;
    return s;
}

}  // namespace subdiff
