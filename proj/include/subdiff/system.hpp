#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include <fftw3.h>

#include "subdiff/block_vector.hpp"
#include "subdiff/spatial_operator.hpp"
#include "subdiff/time_mesh.hpp"
#include "subdiff/weights.hpp"

namespace subdiff {

using ForcingFn = std::function<double(double x, double y, double t)>;

/// The all-at-once space-time system
///
///     M u = eta + f,   M = A (x) I_s - I_t (x) B,
///
/// split into the 2x2 block form induced by the graded/uniform mesh split:
/// M11 = A11 (x) I_s - I (x) B, M21 = A21 (x) I_s, M22 = A22 (x) I_s - I (x) B.
/// Provides matrix-free matvecs for all three blocks; the Toeplitz block has
/// a circulant-embedding FFT path alongside the direct traversal.
class AllAtOnceSystem {
public:
    AllAtOnceSystem(TimeMesh mesh, double beta, SpatialOperator op,
                    SpatialField u0, ForcingFn forcing = {});

    const TimeMesh& mesh() const { return mesh_; }
    const WeightTable& weights() const { return weights_; }
    const SpatialOperator& op() const { return op_; }
    const SpatialField& u0() const { return u0_; }
    double beta() const { return weights_.beta; }
    bool has_forcing() const { return static_cast<bool>(forcing_); }

    int blocks1() const { return weights_.M0; }
    int blocks2() const { return weights_.M - weights_.M0; }

    /// Initial-value contributions (eta1, eta2) to the two right-hand sides.
    std::pair<BlockVector, BlockVector> rhs_eta() const;

    /// Source term sampled at interior nodes and mesh times, split per block.
    std::pair<BlockVector, BlockVector> assemble_forcing() const;

    /// Source values for a single time index k in 1..M (lazy evaluation).
    void forcing_at(int k, std::span<double> out) const;

    void apply_m11(const BlockVector& v, BlockVector& out) const;
    void apply_m21(const BlockVector& v, BlockVector& out) const;

    /// Toeplitz block matvec; picks the FFT path for large uniform parts.
    void apply_m22(const BlockVector& v, BlockVector& out) const;
    void apply_m22_direct(const BlockVector& v, BlockVector& out) const;
    void apply_m22_fft(const BlockVector& v, BlockVector& out) const;

    int threads = 1;

    ~AllAtOnceSystem();
    AllAtOnceSystem(AllAtOnceSystem&&) noexcept;
    AllAtOnceSystem& operator=(AllAtOnceSystem&&) noexcept;
    AllAtOnceSystem(const AllAtOnceSystem&) = delete;
    AllAtOnceSystem& operator=(const AllAtOnceSystem&) = delete;

private:
    void subtract_b(const BlockVector& v, BlockVector& out) const;

    TimeMesh mesh_;
    WeightTable weights_;
    SpatialOperator op_;
    SpatialField u0_;
    ForcingFn forcing_;

    // circulant embedding of the omega generator (length 2(M - M0))
    int fft_len_ = 0;
    std::vector<std::complex<double>> omega_hat_;
    fftw_plan conv_fwd_ = nullptr;
    fftw_plan conv_bwd_ = nullptr;
};

}  // namespace subdiff
