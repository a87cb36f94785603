#include "subdiff/system.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace subdiff {

namespace {

void check_blocks(const BlockVector& v, int blocks, std::size_t block_size,
                  const char* who) {
    if (v.blocks != blocks || v.block_size != block_size)
        throw std::invalid_argument(std::string(who) + ": size mismatch");
}

constexpr int kFftThreshold = 16;  // below this the direct traversal wins

}  // namespace

AllAtOnceSystem::AllAtOnceSystem(TimeMesh mesh, double beta, SpatialOperator op,
                                 SpatialField u0, ForcingFn forcing)
    : mesh_(std::move(mesh)),
      weights_(assemble_weight_table(mesh_, beta)),
      op_(std::move(op)),
      u0_(std::move(u0)),
      forcing_(std::move(forcing)) {
    if (u0_.size() != op_.field_size())
        throw std::invalid_argument("AllAtOnceSystem: u0 size mismatch");

    const int n = blocks2();
    if (n >= 2) {
        fft_len_ = 2 * n;
        const std::size_t ns = op_.field_size();

        // Spectrum of the circulant embedding of the generator.
        std::vector<std::complex<double>> gen(static_cast<std::size_t>(fft_len_), 0.0);
        for (int k = 0; k < n; ++k) gen[static_cast<std::size_t>(k)] = weights_.omega[k];
        omega_hat_.resize(gen.size());
        fftw_plan p1 = fftw_plan_dft_1d(
            fft_len_, reinterpret_cast<fftw_complex*>(gen.data()),
            reinterpret_cast<fftw_complex*>(omega_hat_.data()), FFTW_FORWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_execute(p1);
        fftw_destroy_plan(p1);

        // Batched transforms over the time index, one per spatial dof.
        std::vector<std::complex<double>> a(static_cast<std::size_t>(fft_len_) * ns),
            b(a.size());
        const int len = fft_len_;
        conv_fwd_ = fftw_plan_many_dft(
            1, &len, static_cast<int>(ns), reinterpret_cast<fftw_complex*>(a.data()),
            nullptr, static_cast<int>(ns), 1, reinterpret_cast<fftw_complex*>(b.data()),
            nullptr, static_cast<int>(ns), 1, FFTW_FORWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        conv_bwd_ = fftw_plan_many_dft(
            1, &len, static_cast<int>(ns), reinterpret_cast<fftw_complex*>(a.data()),
            nullptr, static_cast<int>(ns), 1, reinterpret_cast<fftw_complex*>(b.data()),
            nullptr, static_cast<int>(ns), 1, FFTW_BACKWARD,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (conv_fwd_ == nullptr || conv_bwd_ == nullptr)
            throw std::runtime_error("AllAtOnceSystem: convolution planning failed");
    }
}

AllAtOnceSystem::~AllAtOnceSystem() {
    if (conv_fwd_ != nullptr) fftw_destroy_plan(conv_fwd_);
    if (conv_bwd_ != nullptr) fftw_destroy_plan(conv_bwd_);
}

AllAtOnceSystem::AllAtOnceSystem(AllAtOnceSystem&& other) noexcept
    : mesh_(std::move(other.mesh_)),
      weights_(std::move(other.weights_)),
      op_(std::move(other.op_)),
      u0_(std::move(other.u0_)),
      forcing_(std::move(other.forcing_)),
      fft_len_(other.fft_len_),
      omega_hat_(std::move(other.omega_hat_)),
      conv_fwd_(other.conv_fwd_),
      conv_bwd_(other.conv_bwd_) {
    threads = other.threads;
    other.conv_fwd_ = nullptr;
    other.conv_bwd_ = nullptr;
}

AllAtOnceSystem& AllAtOnceSystem::operator=(AllAtOnceSystem&& other) noexcept {
    if (this != &other) {
        if (conv_fwd_ != nullptr) fftw_destroy_plan(conv_fwd_);
        if (conv_bwd_ != nullptr) fftw_destroy_plan(conv_bwd_);
        mesh_ = std::move(other.mesh_);
        weights_ = std::move(other.weights_);
        op_ = std::move(other.op_);
        u0_ = std::move(other.u0_);
        forcing_ = std::move(other.forcing_);
        fft_len_ = other.fft_len_;
        omega_hat_ = std::move(other.omega_hat_);
        conv_fwd_ = other.conv_fwd_;
        conv_bwd_ = other.conv_bwd_;
        threads = other.threads;
        other.conv_fwd_ = nullptr;
        other.conv_bwd_ = nullptr;
    }
    return *this;
}

std::pair<BlockVector, BlockVector> AllAtOnceSystem::rhs_eta() const {
    const std::size_t ns = op_.field_size();
    BlockVector eta1(blocks1(), ns), eta2(blocks2(), ns);
    for (int k = 0; k < blocks1(); ++k) {
        const double c = weights_.eta[static_cast<std::size_t>(k)];
        double* b = eta1.block(k);
        for (std::size_t m = 0; m < ns; ++m) b[m] = c * u0_[m];
    }
    for (int k = 0; k < blocks2(); ++k) {
        const double c = weights_.eta[static_cast<std::size_t>(blocks1() + k)];
        double* b = eta2.block(k);
        for (std::size_t m = 0; m < ns; ++m) b[m] = c * u0_[m];
    }
    return {std::move(eta1), std::move(eta2)};
}

void AllAtOnceSystem::forcing_at(int k, std::span<double> out) const {
    const std::size_t ns = op_.field_size();
    if (out.size() != ns)
        throw std::invalid_argument("AllAtOnceSystem::forcing_at: size mismatch");
    if (!forcing_) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    const double t = mesh_.t(k);
    const int mx = op_.nx() - 1;
    for (int j = 1; j < op_.ny(); ++j)
        for (int i = 1; i < op_.nx(); ++i)
            out[static_cast<std::size_t>(j - 1) * mx + (i - 1)] =
                forcing_(op_.x(i), op_.y(j), t);
}

std::pair<BlockVector, BlockVector> AllAtOnceSystem::assemble_forcing() const {
    const std::size_t ns = op_.field_size();
    BlockVector f1(blocks1(), ns), f2(blocks2(), ns);
    for (int k = 1; k <= blocks1(); ++k)
        forcing_at(k, {f1.block(k - 1), ns});
    for (int k = 1; k <= blocks2(); ++k)
        forcing_at(blocks1() + k, {f2.block(k - 1), ns});
    return {std::move(f1), std::move(f2)};
}

void AllAtOnceSystem::subtract_b(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_.field_size();
    std::vector<double> bv(ns);
    for (int k = 0; k < v.blocks; ++k) {
        op_.apply({v.block(k), ns}, bv);
        double* o = out.block(k);
        for (std::size_t m = 0; m < ns; ++m) o[m] -= bv[m];
    }
}

void AllAtOnceSystem::apply_m11(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_.field_size();
    check_blocks(v, blocks1(), ns, "apply_m11");
    check_blocks(out, blocks1(), ns, "apply_m11");
    const int m0 = blocks1();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (int k = 1; k <= m0; ++k) {
        double* o = out.block(k - 1);
        std::vector<double> bv(ns);
        op_.apply({v.block(k - 1), ns}, bv);
        for (std::size_t m = 0; m < ns; ++m) o[m] = -bv[m];
        for (int l = 1; l <= k; ++l) {
            const double c = weights_.a11_at(k, l);
            const double* vl = v.block(l - 1);
            for (std::size_t m = 0; m < ns; ++m) o[m] += c * vl[m];
        }
    }
}

void AllAtOnceSystem::apply_m21(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_.field_size();
    check_blocks(v, blocks1(), ns, "apply_m21");
    check_blocks(out, blocks2(), ns, "apply_m21");
    const int rows = blocks2();
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
    for (int k = 1; k <= rows; ++k) {
        double* o = out.block(k - 1);
        std::fill(o, o + ns, 0.0);
        for (int l = 1; l <= blocks1(); ++l) {
            const double c = weights_.a21_at(blocks1() + k, l);
            const double* vl = v.block(l - 1);
            for (std::size_t m = 0; m < ns; ++m) o[m] += c * vl[m];
        }
    }
}

void AllAtOnceSystem::apply_m22_direct(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_.field_size();
    check_blocks(v, blocks2(), ns, "apply_m22");
    check_blocks(out, blocks2(), ns, "apply_m22");
    const int n = blocks2();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (int k = 0; k < n; ++k) {
        double* o = out.block(k);
        std::fill(o, o + ns, 0.0);
        for (int l = 0; l <= k; ++l) {
            const double c = weights_.omega[static_cast<std::size_t>(k - l)];
            const double* vl = v.block(l);
            for (std::size_t m = 0; m < ns; ++m) o[m] += c * vl[m];
        }
    }
    subtract_b(v, out);
}

void AllAtOnceSystem::apply_m22_fft(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_.field_size();
    check_blocks(v, blocks2(), ns, "apply_m22");
    check_blocks(out, blocks2(), ns, "apply_m22");
    const int n = blocks2();
    if (conv_fwd_ == nullptr) {  // n == 1: single block
        apply_m22_direct(v, out);
        return;
    }

    const std::size_t total = static_cast<std::size_t>(fft_len_) * ns;
    std::vector<std::complex<double>> buf(total, 0.0), hat(total);
    for (int k = 0; k < n; ++k) {
        const double* vk = v.block(k);
        std::complex<double>* row = buf.data() + static_cast<std::size_t>(k) * ns;
        for (std::size_t m = 0; m < ns; ++m) row[m] = vk[m];
    }
    fftw_execute_dft(conv_fwd_, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(hat.data()));
    for (int t = 0; t < fft_len_; ++t) {
        const std::complex<double> g = omega_hat_[static_cast<std::size_t>(t)];
        std::complex<double>* row = hat.data() + static_cast<std::size_t>(t) * ns;
        for (std::size_t m = 0; m < ns; ++m) row[m] *= g;
    }
    fftw_execute_dft(conv_bwd_, reinterpret_cast<fftw_complex*>(hat.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));
    const double scale = 1.0 / fft_len_;
    for (int k = 0; k < n; ++k) {
        const std::complex<double>* row = buf.data() + static_cast<std::size_t>(k) * ns;
        double* o = out.block(k);
        for (std::size_t m = 0; m < ns; ++m) o[m] = row[m].real() * scale;
    }
    subtract_b(v, out);
}

void AllAtOnceSystem::apply_m22(const BlockVector& v, BlockVector& out) const {
    if (blocks2() >= kFftThreshold)
        apply_m22_fft(v, out);
    else
        apply_m22_direct(v, out);
}

}  // namespace subdiff
