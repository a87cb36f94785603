#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "subdiff/preconditioner.hpp"
#include "subdiff/system.hpp"

namespace subdiff {

/// Desk-scale analysis tools: explicit assemblies, spectra, and the
/// computable forms of the preconditioner quality statements.  Everything
/// here is guarded to small sizes; production solves never call into it.

enum class BlockTag { M11, M21, M22, Full };

Eigen::MatrixXd dense_b(const SpatialOperator& op);
/// The orthonormal sine basis Q = Q_y (x) Q_x as a dense matrix.
Eigen::MatrixXd dense_q(const SpatialOperator& op);

/// Explicit Kronecker assembly of a system block.  Throws std::length_error
/// above the desk-scale guard (M <= 64, (Nx-1)(Ny-1) <= 1024).
Eigen::MatrixXd dense_assemble(const AllAtOnceSystem& sys, BlockTag which);

Eigen::MatrixXd dense_p1(const WeightTable& w, const SpatialOperator& op);
Eigen::MatrixXd dense_p_alpha(const WeightTable& w, const SpatialOperator& op, double alpha);

struct NilpotencyResult {
    double max_eig_deviation = 0.0;  // max |lambda - 1| over eig(P1^{-1} M11)
    double nilpotent_rel_norm = 0.0; // ||(P1^{-1} M11 - I)^p||_F / ||P1^{-1} M11||_F
    int power = 0;                   // p = ceil(M0 / 3)
};

/// Checks that P1^{-1} M11 has all eigenvalues at 1 and that
/// (P1^{-1} M11 - I) is nilpotent of index at most ceil(M0/3).
NilpotencyResult nilpotency_check(const AllAtOnceSystem& sys);

/// || (I (x) Q^T) W (I (x) Q) ||_inf, the norm in which the alpha-circulant
/// preconditioned block is provably close to identity.
double q_inf_norm(const SpatialOperator& op, const Eigen::MatrixXd& w);

struct BoundReport {
    double epsilon_max = 0.0;  // -omega_1 / omega_0
    double C = 0.0;            // bound constant, independent of the spatial spectrum
    double lhs = 0.0;          // measured ||I - P_alpha^{-1} M22||_{Q,inf}
    double rhs = 0.0;          // C * alpha
};

/// Computes the bound constant C from the weight generator alone, via the
/// auxiliary lower-triangular epsilon-power matrix and the strict-diagonal-
/// dominance recursions.  Throws std::runtime_error if the recursion
/// denominators signal loss of diagonal dominance.  lhs is left at zero;
/// theorem33_report fills it.
BoundReport bound_constant(const WeightTable& w, double alpha);

/// bound_constant plus the dense measurement of the left-hand side.
BoundReport theorem33_report(const AllAtOnceSystem& sys, double alpha);

/// Max magnitude per sub-diagonal of the graded coefficient block A11;
/// row d of the output is (d, max_k |A11(k, k-d)|).
std::vector<double> decay_profile(const WeightTable& w);

enum class SpectrumTag { M11, P1InvM11, M22, PAlphaInvM22 };

/// Full spectrum of the tagged operator, computed per spatial eigenvalue
/// through the sine-basis block diagonalization (exact similarity), so the
/// default problem sizes stay cheap.
std::vector<std::complex<double>> spectrum(const AllAtOnceSystem& sys, SpectrumTag tag,
                                           double alpha);

const char* spectrum_tag_name(SpectrumTag tag);

void write_spectrum_csv(const std::string& path,
                        const std::vector<std::complex<double>>& eigs);
void write_decay_csv(const std::string& path, const std::vector<double>& profile);
void write_bound_csv(const std::string& path, const BoundReport& report);

}  // namespace subdiff
