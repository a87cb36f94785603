#include "subdiff/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {

namespace {

// [xi_{2-beta}(a) - xi_{2-beta}(a - tau)] / tau for a >= tau > 0, written so
// the near-cancellation at tau << a stays accurate:
// a^{1-beta} - (a-tau)^{1-beta} = -a^{1-beta} expm1((1-beta) log1p(-tau/a)).
double xi_difference_quotient(double beta, double a, double tau, double gamma2mb) {
    const double p = 1.0 - beta;
    if (tau >= a) return std::pow(a, p) / (gamma2mb * tau);  // lower end hits t_k
    return -std::pow(a, p) * std::expm1(p * std::log1p(-tau / a)) / (gamma2mb * tau);
}

}  // namespace

std::vector<double> graded_weights(const TimeMesh& mesh, double beta, int k) {
    if (k < 1 || k > mesh.M)
        throw std::invalid_argument("graded_weights: step index out of range");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument("graded_weights: beta must lie in (0,1)");
    const double gamma2mb = std::tgamma(2.0 - beta);
    const double tk = mesh.t(k);
    std::vector<double> w(static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) {
        const double a = tk - mesh.t(l - 1);
        w[static_cast<std::size_t>(l - 1)] =
            xi_difference_quotient(beta, a, mesh.tau(l), gamma2mb);
    }
    return w;
}

std::vector<double> uniform_b(double beta, double tau_tilde, int n) {
    if (n < 1) throw std::invalid_argument("uniform_b: need n >= 1");
    if (!(tau_tilde > 0.0)) throw std::invalid_argument("uniform_b: need tau > 0");
    const double p = 1.0 - beta;
    const double scale = std::pow(tau_tilde, -beta) / std::tgamma(2.0 - beta);
    std::vector<double> b(static_cast<std::size_t>(n));
    b[0] = scale;
    for (int l = 1; l < n; ++l) {
        // (l+1)^{1-beta} - l^{1-beta}, cancellation-safe
        const double lp1 = static_cast<double>(l + 1);
        b[static_cast<std::size_t>(l)] =
            -scale * std::pow(lp1, p) * std::expm1(p * std::log1p(-1.0 / lp1));
    }
    return b;
}

std::vector<double> uniform_weights(double beta, double tau_tilde, int n) {
    std::vector<double> b = uniform_b(beta, tau_tilde, n);
    std::vector<double> omega(b.size());
    omega[0] = b[0];
    for (std::size_t l = 1; l < b.size(); ++l) omega[l] = b[l] - b[l - 1];
    return omega;
}

WeightTable assemble_weight_table(const TimeMesh& mesh, double beta) {
    WeightTable w;
    w.beta = beta;
    w.M = mesh.M;
    w.M0 = mesh.M0;
    const int m0 = mesh.M0;
    const int m2 = mesh.M - mesh.M0;

    w.a11.assign(static_cast<std::size_t>(m0) * m0, 0.0);
    w.a21.assign(static_cast<std::size_t>(m2) * m0, 0.0);
    w.omega = uniform_weights(beta, mesh.tau_tilde, m2);
    w.eta.resize(static_cast<std::size_t>(mesh.M));
    w.a0.resize(static_cast<std::size_t>(mesh.M));

    // Graded rows: the off-diagonal entry in column l is the difference of
    // consecutive row weights; the diagonal is the newest weight.
    for (int k = 1; k <= m0; ++k) {
        std::vector<double> row = graded_weights(mesh, beta, k);
        double* out = w.a11.data() + static_cast<std::size_t>(k - 1) * m0;
        out[k - 1] = row[static_cast<std::size_t>(k - 1)];  // a_0^{(k)}
        for (int l = 1; l < k; ++l)
            out[l - 1] = row[static_cast<std::size_t>(l - 1)] -
                         row[static_cast<std::size_t>(l)];
        w.a0[static_cast<std::size_t>(k - 1)] = out[k - 1];
        w.eta[static_cast<std::size_t>(k - 1)] = row[0];
    }

    // Coupling rows k = M0+1..M restricted to the graded columns.  The last
    // column needs the weight of the first uniform interval, which reduces
    // to the uniform-mesh b coefficient.
    std::vector<double> b = uniform_b(beta, mesh.tau_tilde, m2);
    for (int k = m0 + 1; k <= mesh.M; ++k) {
        std::vector<double> row = graded_weights(mesh, beta, k);
        double* out = w.a21.data() + static_cast<std::size_t>(k - m0 - 1) * m0;
        for (int l = 1; l < m0; ++l)
            out[l - 1] = row[static_cast<std::size_t>(l - 1)] -
                         row[static_cast<std::size_t>(l)];
        out[m0 - 1] = row[static_cast<std::size_t>(m0 - 1)] -
                      b[static_cast<std::size_t>(k - m0 - 1)];
        w.a0[static_cast<std::size_t>(k - 1)] = w.omega[0];
        w.eta[static_cast<std::size_t>(k - 1)] = row[0];
    }
    return w;
}

}  // namespace subdiff
