#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subdiff/block_vector.hpp"

namespace subdiff {

struct KrylovConfig {
    double rtol = 1e-9;
    int maxit = 1000;
    bool record_history = false;
};

struct KrylovResult {
    BlockVector solution;
    /// Full steps count 1, convergence at the intermediate residual
    /// check counts 0.5.
    double iterations = 0.0;
    bool converged = false;
    std::vector<double> residual_history;  // relative residuals, per half step
    std::string breakdown;                 // empty unless the recurrence broke down
};

using LinearOp = std::function<void(const BlockVector&, BlockVector&)>;

/// Right-preconditioned BiCGSTAB with zero initial guess.  The residual
/// tested against rtol is the true residual of the unpreconditioned system,
/// so iteration counts are comparable across preconditioners.  precond may
/// be empty (unpreconditioned solve); when set it applies the inverse of
/// the preconditioner.
KrylovResult bicgstab(const LinearOp& matvec, const LinearOp& precond,
                      const BlockVector& b, const KrylovConfig& config);

}  // namespace subdiff
