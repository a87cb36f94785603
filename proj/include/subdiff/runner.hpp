#pragma once

#include <optional>
#include <string>
#include <utility>

#include "subdiff/problems.hpp"

namespace subdiff {

enum class Method { Bfsm, Unpreconditioned, Preconditioned };

std::string method_tag(Method m);             // "bfsm" | "i" | "p"
Method parse_method(const std::string& tag);  // throws std::invalid_argument

struct RunConfig {
    std::string problem = "example1";
    double beta = 0.5;
    double r = 2.0;
    int M = 32;
    int N = 32;
    Method method = Method::Preconditioned;
    std::optional<double> alpha_override;     // default: min(1e-4, tau_tilde/2)
    double rtol = 1e-9;                       // linear solve tolerance
    double newton_rtol = 1e-6;                // inner tolerance inside Newton
    int threads = 1;
    unsigned seed = 0;                        // for randomized test vectors only
    bool dump_spectra = false;
    std::string out_dir = ".";
    std::optional<double> time_budget_s;      // exceeded -> dash flag
};

/// One row of the results table.  Which iteration fields are populated
/// depends on the method and on whether the problem is semilinear.
struct SolveReport {
    std::string method;
    std::optional<std::pair<double, double>> iter;        // linear: per subproblem
    std::optional<std::pair<int, int>> iter_outer;        // Newton outer counts
    std::optional<std::pair<double, double>> iter_inner;  // mean inner counts
    std::optional<double> iter1;                          // sequential Newton mean
    double time_s = 0.0;
    std::optional<double> error_max;  // vs exact solution at final time
    bool converged = true;
    bool dagger = false;  // iteration cap exceeded
    bool dash = false;    // wall-time budget exceeded
};

/// Executes one configured solve, appends a row to <out_dir>/runs.csv, and
/// (optionally) dumps spectra, the weight decay profile, and the circulant
/// bound report as CSV files.
SolveReport run(const RunConfig& config);

}  // namespace subdiff
