#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subdiff/newton.hpp"
#include "subdiff/system.hpp"

namespace subdiff {

/// A problem instance: geometry, data functions, and (optionally) the
/// nonlinearity and a closed-form solution for error measurement.
struct Problem {
    std::string name;
    Rectangle domain;
    double T = 1.0;
    double kappa = 1.0;
    std::function<double(double, double)> initial;         // u0(x, y)
    ForcingFn forcing;                                      // empty = zero source
    std::function<double(double, double, double)> exact;   // empty = unavailable
    ScalarFn nonlinearity;                                  // empty = linear problem
};

/// Diffusion with a two-Gaussian manufactured solution on [-4,10]^2,
/// t-regularity exponent sigma = 2.2 - beta.
Problem problem_example1(double beta);

/// Fisher reaction-diffusion on [0,pi]^2: g(u) = u(1 - u),
/// u0 = sin(x) sin(y), zero source.
Problem problem_example2();

using ProblemFactory = std::function<Problem(double beta)>;

/// Name-keyed registry; example1/example2 are pre-registered.  User
/// problems are added in code (no dynamic loading).
void register_problem(const std::string& name, ProblemFactory factory);
Problem make_problem(const std::string& name, double beta);
std::vector<std::string> registered_problems();

/// Interior-node samples of the initial value, x index fastest.
SpatialField sample_initial(const Problem& p, const SpatialOperator& op);
/// Interior-node samples of the exact solution at time t.
SpatialField sample_exact(const Problem& p, const SpatialOperator& op, double t);

/// Assembles the space-time system for a problem on the given mesh with an
/// N x N spatial grid.
AllAtOnceSystem make_system(const Problem& p, double beta, const TimeMesh& mesh, int n);

}  // namespace subdiff
