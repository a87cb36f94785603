#include "subdiff/spatial_operator.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subdiff {

SpatialOperator::SpatialOperator(int nx, int ny, const Rectangle& domain, double kappa)
    : nx_(nx), ny_(ny), domain_(domain), kappa_(kappa) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("SpatialOperator: need Nx, Ny >= 2");
    if (!(domain.x_hi > domain.x_lo) || !(domain.y_hi > domain.y_lo))
        throw std::invalid_argument("SpatialOperator: degenerate domain");
    if (!(kappa > 0.0))
        throw std::invalid_argument("SpatialOperator: kappa must be positive");

    hx_ = (domain.x_hi - domain.x_lo) / nx;
    hy_ = (domain.y_hi - domain.y_lo) / ny;

    const double pi = std::numbers::pi;
    eig_x_.resize(static_cast<std::size_t>(nx - 1));
    for (int i = 1; i < nx; ++i) {
        double s = std::sin(i * pi / (2.0 * nx));
        eig_x_[static_cast<std::size_t>(i - 1)] = -4.0 * kappa / (hx_ * hx_) * s * s;
    }
    eig_y_.resize(static_cast<std::size_t>(ny - 1));
    for (int j = 1; j < ny; ++j) {
        double s = std::sin(j * pi / (2.0 * ny));
        eig_y_[static_cast<std::size_t>(j - 1)] = -4.0 * kappa / (hy_ * hy_) * s * s;
    }
    eig_full_.resize(field_size());
    for (int j = 1; j < ny; ++j)
        for (int i = 1; i < nx; ++i)
            eig_full_[static_cast<std::size_t>(j - 1) * (nx - 1) + (i - 1)] =
                eig_x_[static_cast<std::size_t>(i - 1)] +
                eig_y_[static_cast<std::size_t>(j - 1)];

    // One out-of-place plan, reused via the new-array interface; planned
    // unaligned so any caller buffer is admissible.
    std::vector<double> a(field_size()), b(field_size());
    dst_plan_ = fftw_plan_r2r_2d(ny - 1, nx - 1, a.data(), b.data(), FFTW_RODFT00,
                                 FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (dst_plan_ == nullptr)
        throw std::runtime_error("SpatialOperator: sine transform planning failed");
    // RODFT00 along each axis carries a factor 2 sin(...) against the
    // orthonormal sqrt(2/N) sin(...).
    dst_scale_ = 1.0 / (2.0 * std::sqrt(static_cast<double>(nx) * ny));
}

SpatialOperator::~SpatialOperator() {
    if (dst_plan_ != nullptr) fftw_destroy_plan(dst_plan_);
}

SpatialOperator::SpatialOperator(SpatialOperator&& other) noexcept
    : nx_(other.nx_),
      ny_(other.ny_),
      domain_(other.domain_),
      hx_(other.hx_),
      hy_(other.hy_),
      kappa_(other.kappa_),
      eig_x_(std::move(other.eig_x_)),
      eig_y_(std::move(other.eig_y_)),
      eig_full_(std::move(other.eig_full_)),
      dst_plan_(other.dst_plan_),
      dst_scale_(other.dst_scale_) {
    other.dst_plan_ = nullptr;
}

SpatialOperator& SpatialOperator::operator=(SpatialOperator&& other) noexcept {
    if (this != &other) {
        if (dst_plan_ != nullptr) fftw_destroy_plan(dst_plan_);
        nx_ = other.nx_;
        ny_ = other.ny_;
        domain_ = other.domain_;
        hx_ = other.hx_;
        hy_ = other.hy_;
        kappa_ = other.kappa_;
        eig_x_ = std::move(other.eig_x_);
        eig_y_ = std::move(other.eig_y_);
        eig_full_ = std::move(other.eig_full_);
        dst_plan_ = other.dst_plan_;
        dst_scale_ = other.dst_scale_;
        other.dst_plan_ = nullptr;
    }
    return *this;
}

void SpatialOperator::apply(std::span<const double> v, std::span<double> out) const {
    if (v.size() != field_size() || out.size() != field_size())
        throw std::invalid_argument("SpatialOperator::apply: size mismatch");
    const int mx = nx_ - 1, my = ny_ - 1;
    const double cx = kappa_ / (hx_ * hx_), cy = kappa_ / (hy_ * hy_);
    for (int j = 0; j < my; ++j) {
        const double* row = v.data() + static_cast<std::size_t>(j) * mx;
        double* o = out.data() + static_cast<std::size_t>(j) * mx;
        for (int i = 0; i < mx; ++i) {
            double west = (i > 0) ? row[i - 1] : 0.0;
            double east = (i + 1 < mx) ? row[i + 1] : 0.0;
            double south = (j > 0) ? row[i - mx] : 0.0;
            double north = (j + 1 < my) ? row[i + mx] : 0.0;
            o[i] = cx * (west - 2.0 * row[i] + east) + cy * (south - 2.0 * row[i] + north);
        }
    }
}

void SpatialOperator::dst2(std::span<const double> v, std::span<double> out) const {
    if (v.size() != field_size() || out.size() != field_size())
        throw std::invalid_argument("SpatialOperator::dst2: size mismatch");
    if (v.data() == out.data())
        throw std::invalid_argument("SpatialOperator::dst2: needs distinct buffers");
    fftw_execute_r2r(dst_plan_, const_cast<double*>(v.data()), out.data());
    for (double& e : out) e *= dst_scale_;
}

void SpatialOperator::solve_shifted(double shift, std::span<const double> rhs,
                                    std::span<double> out) const {
    std::vector<double> hat(field_size());
    dst2(rhs, hat);
    for (std::size_t m = 0; m < hat.size(); ++m) hat[m] /= (shift - eig_full_[m]);
    dst2(hat, out);
}

}  // namespace subdiff
