#pragma once

#include "subdiff/newton.hpp"
#include "subdiff/system.hpp"

namespace subdiff {

/// Block forward substitution: march the scheme step by step, solving
/// (a_0^{(k)} I - B) u^k = f^k + eta_k + history  via sine diagonalization.
/// History accumulation is O(k) per step; this is the sequential baseline
/// the all-at-once solvers are checked against.
BlockVector bfsm_linear(const AllAtOnceSystem& sys);

struct BfsmNewtonResult {
    BlockVector u;
    double iter1 = 0.0;           // mean Newton count per step
    std::vector<int> per_step;    // Newton count of each step
};

/// Sequential solve of the semilinear scheme: per step, the nonlinear
/// equation (a_0 I - B) u - g(u) = known  is solved by modified Newton with
/// the frozen Jacobian (a_0 I - B), starting from the previous time value.
/// Throws std::runtime_error (with the step index) if a step fails to
/// converge within cfg.max_outer iterations.
BfsmNewtonResult bfsm_semilinear(const AllAtOnceSystem& sys, const ScalarFn& g,
                                 const NewtonConfig& cfg);

}  // namespace subdiff
