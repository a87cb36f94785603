#include "subdiff/sequential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace subdiff {

namespace {

// rhs = f^k + eta_k u0 - sum_{l<k} A(k,l) u^l
void step_rhs(const AllAtOnceSystem& sys, const BlockVector& u, int k,
              std::vector<double>& rhs) {
    const std::size_t ns = sys.op().field_size();
    const WeightTable& w = sys.weights();
    sys.forcing_at(k, rhs);
    const double ek = w.eta[static_cast<std::size_t>(k - 1)];
    const SpatialField& u0 = sys.u0();
    for (std::size_t m = 0; m < ns; ++m) rhs[m] += ek * u0[m];
    for (int l = 1; l < k; ++l) {
        const double c = w.entry(k, l);
        const double* ul = u.block(l - 1);
        for (std::size_t m = 0; m < ns; ++m) rhs[m] -= c * ul[m];
    }
}

}  // namespace

BlockVector bfsm_linear(const AllAtOnceSystem& sys) {
    const std::size_t ns = sys.op().field_size();
    const int M = sys.mesh().M;
    BlockVector u(M, ns);
    std::vector<double> rhs(ns);
    for (int k = 1; k <= M; ++k) {
        step_rhs(sys, u, k, rhs);
        sys.op().solve_shifted(sys.weights().a0[static_cast<std::size_t>(k - 1)], rhs,
                               {u.block(k - 1), ns});
    }
    return u;
}

BfsmNewtonResult bfsm_semilinear(const AllAtOnceSystem& sys, const ScalarFn& g,
                                 const NewtonConfig& cfg) {
    const std::size_t ns = sys.op().field_size();
    const int M = sys.mesh().M;
    BfsmNewtonResult res;
    res.u = BlockVector(M, ns);
    res.per_step.reserve(static_cast<std::size_t>(M));

    std::vector<double> rhs(ns), uk(ns), resid(ns), bu(ns), delta(ns);
    long total = 0;
    for (int k = 1; k <= M; ++k) {
        step_rhs(sys, res.u, k, rhs);
        const double a0 = sys.weights().a0[static_cast<std::size_t>(k - 1)];

        // Start from the previous time value; freeze the Jacobian to
        // (a0 I - B), so each correction is one sine-diagonal solve.
        const double* prev = (k == 1) ? sys.u0().data() : res.u.block(k - 2);
        std::copy(prev, prev + ns, uk.begin());
        double denom = 0.0;
        for (std::size_t m = 0; m < ns; ++m) denom += uk[m] * uk[m];
        denom = std::sqrt(denom);
        if (denom == 0.0) denom = 1.0;  // zero start: absolute update test

        bool converged = false;
        int it = 0;
        while (it < cfg.max_outer) {
            ++it;
            sys.op().apply(uk, bu);
            for (std::size_t m = 0; m < ns; ++m)
                resid[m] = a0 * uk[m] - bu[m] - g(uk[m]) - rhs[m];
            sys.op().solve_shifted(a0, resid, delta);
            double nd = 0.0;
            for (std::size_t m = 0; m < ns; ++m) {
                uk[m] -= delta[m];
                nd += delta[m] * delta[m];
            }
            if (std::sqrt(nd) / denom <= cfg.step_rtol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw std::runtime_error("bfsm_semilinear: Newton stalled at step " +
                                     std::to_string(k));
        res.per_step.push_back(it);
        total += it;
        std::copy(uk.begin(), uk.end(), res.u.block(k - 1));
    }
    res.iter1 = static_cast<double>(total) / M;
    return res;
}

}  // namespace subdiff
