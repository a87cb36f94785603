#pragma once

#include <functional>
#include <utility>

#include "subdiff/bicgstab.hpp"
#include "subdiff/preconditioner.hpp"
#include "subdiff/system.hpp"

namespace subdiff {

/// Pointwise nonlinearity u -> g(u).
using ScalarFn = std::function<double(double)>;

struct NewtonConfig {
    double step_rtol = 1e-10;  // relative update norm
    int max_outer = 200;
    KrylovConfig inner{1e-6, 1000, false};
    int coarsening = 2;  // time-coarsening factor for the initial guess
};

struct NewtonSubReport {
    int outer = 0;
    double inner_avg = 0.0;
    bool converged = false;
    std::vector<double> inner_iters;  // per outer step
};

struct NewtonReport {
    NewtonSubReport sub1, sub2;
};

/// Inner linear solves for the two subproblems.  With a preconditioner and
/// M0 <= 3 the tridiagonal band preconditioner equals the block itself, so
/// the first subproblem short-circuits to a single inverse apply
/// (reported as 0 iterations).
KrylovResult solve_subproblem1(const AllAtOnceSystem& sys, const P1Preconditioner* p1,
                               const BlockVector& rhs, const KrylovConfig& cfg);
KrylovResult solve_subproblem2(const AllAtOnceSystem& sys, const PAlphaPreconditioner* pa,
                               const BlockVector& rhs, const KrylovConfig& cfg);

/// Initial guess for the all-at-once Newton iteration: march the linearized
/// scheme  delta_t^beta u^k = B u^k + g(u^{k-1}) + f^k  on a mesh coarsened
/// in time by the given factor (same grading, proportionate split), then
/// interpolate linearly in time onto the fine mesh.  Falls back to the zero
/// guess when either segment of the coarse mesh would collapse.
std::pair<BlockVector, BlockVector> coarse_initial_guess(const AllAtOnceSystem& sys,
                                                         const ScalarFn& g,
                                                         int coarsening);

/// Modified Newton for the graded subproblem: the Jacobian is frozen to
/// M11, so every outer step solves M11 U = G1(u) by (preconditioned)
/// BiCGSTAB and updates u -= U.  u1 carries the initial guess in and the
/// solution out.
NewtonSubReport newton_subproblem1(const AllAtOnceSystem& sys, const ScalarFn& g,
                                   const P1Preconditioner* p1, const NewtonConfig& cfg,
                                   BlockVector& u1);

/// Same recurrence on the uniform subproblem with M22 frozen; the
/// right-hand side carries the coupling term -M21 u1.
NewtonSubReport newton_subproblem2(const AllAtOnceSystem& sys, const ScalarFn& g,
                                   const BlockVector& u1, const PAlphaPreconditioner* pa,
                                   const NewtonConfig& cfg, BlockVector& u2);

}  // namespace subdiff
