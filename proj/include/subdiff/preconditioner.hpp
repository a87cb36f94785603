#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

#include "subdiff/block_vector.hpp"
#include "subdiff/spatial_operator.hpp"
#include "subdiff/weights.hpp"

namespace subdiff {

/// Raised when a computation that is real in exact arithmetic leaves an
/// imaginary residue above tolerance (signals a mis-scaled transform).
class NumericalBreakdown : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Block lower tridiagonal preconditioner for the graded subproblem:
/// P1 = tri(A11) (x) I_s - I (x) B, where tri(A11) keeps the main diagonal
/// and the first two sub-diagonals of A11.  The inverse apply runs a block
/// forward substitution in sine space, where every block is diagonal.
///
/// Holds a reference to the spatial operator; the operator must outlive
/// the preconditioner.
class P1Preconditioner {
public:
    P1Preconditioner(const WeightTable& weights, const SpatialOperator& op);

    /// out = P1^{-1} v.
    void apply_inverse(const BlockVector& v, BlockVector& out) const;

    /// out = P1 v (band recurrence + stencil); used for verification.
    void apply(const BlockVector& v, BlockVector& out) const;

    const std::vector<double>& diag() const { return d_; }
    const std::vector<double>& sub1() const { return s1_; }
    const std::vector<double>& sub2() const { return s2_; }
    int blocks() const { return static_cast<int>(d_.size()); }

private:
    const SpatialOperator* op_;
    std::vector<double> d_;   // a_0^{(k)}
    std::vector<double> s1_;  // entry (k, k-1), defined for k >= 2
    std::vector<double> s2_;  // entry (k, k-2), defined for k >= 3
};

/// Eigenvalues of the alpha-circulant completion of the Toeplitz generator:
/// the DFT of [omega_0, alpha^{1/n} omega_1, ..., alpha^{(n-1)/n} omega_{n-1}].
/// All real parts are strictly positive.
std::vector<std::complex<double>> p_alpha_eigenvalues(const std::vector<double>& omega,
                                                      double alpha);

/// Parallel-in-time preconditioner for the uniform subproblem:
/// P_alpha = A22^alpha (x) I_s - I (x) B with A22^alpha the alpha-circulant
/// completion of A22.  The inverse apply is a scaled FFT across the time
/// index, independent shifted sine-diagonal solves per frequency, and the
/// inverse transform.  With real input only the first ceil((n+1)/2)
/// frequencies are solved; the rest follow by conjugate symmetry.
class PAlphaPreconditioner {
public:
    PAlphaPreconditioner(const WeightTable& weights, const SpatialOperator& op,
                         double alpha, bool use_half_spectrum = true);
    ~PAlphaPreconditioner();

    PAlphaPreconditioner(PAlphaPreconditioner&&) noexcept;
    PAlphaPreconditioner& operator=(PAlphaPreconditioner&&) noexcept;
    PAlphaPreconditioner(const PAlphaPreconditioner&) = delete;
    PAlphaPreconditioner& operator=(const PAlphaPreconditioner&) = delete;

    /// out = P_alpha^{-1} v.  Throws NumericalBreakdown if the imaginary
    /// residue of the (analytically real) result exceeds 1e-9 relative.
    void apply_inverse(const BlockVector& v, BlockVector& out) const;

    /// out = P_alpha v (alpha-circulant matvec); used for verification.
    void apply(const BlockVector& v, BlockVector& out) const;

    double alpha() const { return alpha_; }
    bool half_spectrum() const { return half_; }
    void set_half_spectrum(bool on) { half_ = on; }
    /// Number of shifted solves one inverse apply performs.
    int frequency_solve_count() const;
    const std::vector<std::complex<double>>& eigenvalues() const { return lambda_; }

    int threads = 1;

private:
    void frequency_solves(std::complex<double>* buf) const;

    const SpatialOperator* op_;
    double alpha_ = 0.0;
    bool half_ = true;
    int n_ = 0;
    std::vector<double> omega_;
    std::vector<double> theta_;  // alpha^{k/n}, k = 0..n-1
    std::vector<std::complex<double>> lambda_;
    fftw_plan time_f_ = nullptr;      // unscaled DFT with e^{+2 pi i} kernel
    fftw_plan time_fstar_ = nullptr;  // conjugate kernel; 1/n applied after
};

}  // namespace subdiff
