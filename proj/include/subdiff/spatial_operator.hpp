#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

namespace subdiff {

struct Rectangle {
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = 0.0, y_hi = 1.0;
};

/// Five-point Laplacian B = kappa (I_y (x) B_x + B_y (x) I_x) on a rectangle
/// with homogeneous Dirichlet boundary, together with its sine-basis
/// diagonalization B = Q D_B Q^T.  Q is orthogonal and symmetric, so the
/// forward and inverse transforms coincide.
///
/// Immutable after construction; apply/dst2/solve_shifted are reentrant and
/// may be called concurrently on distinct fields.
class SpatialOperator {
public:
    SpatialOperator(int nx, int ny, const Rectangle& domain, double kappa);
    ~SpatialOperator();

    SpatialOperator(SpatialOperator&&) noexcept;
    SpatialOperator& operator=(SpatialOperator&&) noexcept;
    SpatialOperator(const SpatialOperator&) = delete;
    SpatialOperator& operator=(const SpatialOperator&) = delete;

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t field_size() const {
        return static_cast<std::size_t>(nx_ - 1) * static_cast<std::size_t>(ny_ - 1);
    }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double kappa() const { return kappa_; }
    const Rectangle& domain() const { return domain_; }

    /// Interior node coordinates, 1-based: x(i) for i = 1..nx-1.
    double x(int i) const { return domain_.x_lo + i * hx_; }
    double y(int j) const { return domain_.y_lo + j * hy_; }

    /// lambda_i = -(4 kappa / h^2) sin^2(i pi / 2N), all strictly negative.
    const std::vector<double>& eig_x() const { return eig_x_; }
    const std::vector<double>& eig_y() const { return eig_y_; }
    /// eig_full[(j-1)(Nx-1) + (i-1)] = eig_x[i-1] + eig_y[j-1].
    const std::vector<double>& eig_full() const { return eig_full_; }

    /// out = B v (five-point stencil, zero ghost values).
    void apply(std::span<const double> v, std::span<double> out) const;

    /// out = Q v, the orthonormal 2D sine transform.  Self-inverse.
    /// Requires out to be a different buffer than v.
    void dst2(std::span<const double> v, std::span<double> out) const;

    /// out = (shift I - B)^{-1} rhs via sine diagonalization.
    /// Well defined for shift > 0 since all eigenvalues of B are negative.
    void solve_shifted(double shift, std::span<const double> rhs, std::span<double> out) const;

private:
    int nx_ = 0, ny_ = 0;
    Rectangle domain_;
    double hx_ = 0.0, hy_ = 0.0, kappa_ = 0.0;
    std::vector<double> eig_x_, eig_y_, eig_full_;
    fftw_plan dst_plan_ = nullptr;
    double dst_scale_ = 1.0;
};

}  // namespace subdiff
