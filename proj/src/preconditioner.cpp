#include "subdiff/preconditioner.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {

namespace {

void axpy_block(double c, const double* x, double* y, std::size_t n) {
    for (std::size_t m = 0; m < n; ++m) y[m] += c * x[m];
}

}  // namespace

P1Preconditioner::P1Preconditioner(const WeightTable& weights, const SpatialOperator& op)
    : op_(&op) {
    const int m0 = weights.M0;
    if (m0 < 1) throw std::invalid_argument("P1Preconditioner: need M0 >= 1");
    d_.resize(static_cast<std::size_t>(m0));
    s1_.assign(static_cast<std::size_t>(m0), 0.0);
    s2_.assign(static_cast<std::size_t>(m0), 0.0);
    for (int k = 1; k <= m0; ++k) {
        d_[static_cast<std::size_t>(k - 1)] = weights.a11_at(k, k);
        if (k >= 2) s1_[static_cast<std::size_t>(k - 1)] = weights.a11_at(k, k - 1);
        if (k >= 3) s2_[static_cast<std::size_t>(k - 1)] = weights.a11_at(k, k - 2);
    }
}

void P1Preconditioner::apply_inverse(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_->field_size();
    const int m0 = blocks();
    if (v.blocks != m0 || v.block_size != ns || out.blocks != m0 || out.block_size != ns)
        throw std::invalid_argument("P1Preconditioner::apply_inverse: size mismatch");

    const std::vector<double>& lam = op_->eig_full();
    // Forward transform per block, then a block forward substitution where
    // every block is diagonal in sine space, then the inverse transform.
    // The substitution is fused over (time, frequency).
    for (int k = 0; k < m0; ++k) {
        double* zk = out.block(k);
        op_->dst2({v.block(k), ns}, {zk, ns});
        const double dk = d_[static_cast<std::size_t>(k)];
        const double c1 = s1_[static_cast<std::size_t>(k)];
        const double c2 = s2_[static_cast<std::size_t>(k)];
        const double* z1 = (k >= 1) ? out.block(k - 1) : nullptr;
        const double* z2 = (k >= 2) ? out.block(k - 2) : nullptr;
        for (std::size_t m = 0; m < ns; ++m) {
            double rhs = zk[m];
            if (z1 != nullptr) rhs -= c1 * z1[m];
            if (z2 != nullptr) rhs -= c2 * z2[m];
            zk[m] = rhs / (dk - lam[m]);
        }
    }
    std::vector<double> tmp(ns);
    for (int k = 0; k < m0; ++k) {
        double* zk = out.block(k);
        op_->dst2({zk, ns}, tmp);
        std::copy(tmp.begin(), tmp.end(), zk);
    }
}

void P1Preconditioner::apply(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_->field_size();
    const int m0 = blocks();
    if (v.blocks != m0 || v.block_size != ns || out.blocks != m0 || out.block_size != ns)
        throw std::invalid_argument("P1Preconditioner::apply: size mismatch");
    std::vector<double> bv(ns);
    for (int k = 0; k < m0; ++k) {
        double* o = out.block(k);
        op_->apply({v.block(k), ns}, bv);
        const double dk = d_[static_cast<std::size_t>(k)];
        const double* vk = v.block(k);
        for (std::size_t m = 0; m < ns; ++m) o[m] = dk * vk[m] - bv[m];
        if (k >= 1) axpy_block(s1_[static_cast<std::size_t>(k)], v.block(k - 1), o, ns);
        if (k >= 2) axpy_block(s2_[static_cast<std::size_t>(k)], v.block(k - 2), o, ns);
    }
}

std::vector<std::complex<double>> p_alpha_eigenvalues(const std::vector<double>& omega,
                                                      double alpha) {
    const int n = static_cast<int>(omega.size());
    if (n < 1) throw std::invalid_argument("p_alpha_eigenvalues: empty generator");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("p_alpha_eigenvalues: alpha must lie in (0,1]");

    std::vector<std::complex<double>> in(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        in[static_cast<std::size_t>(k)] =
            std::pow(alpha, static_cast<double>(k) / n) * omega[static_cast<std::size_t>(k)];
    std::vector<std::complex<double>> lambda(in.size());
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(lambda.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_execute(p);
    fftw_destroy_plan(p);
    return lambda;
}

PAlphaPreconditioner::PAlphaPreconditioner(const WeightTable& weights,
                                           const SpatialOperator& op, double alpha,
                                           bool use_half_spectrum)
    : op_(&op), alpha_(alpha), half_(use_half_spectrum) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::invalid_argument("PAlphaPreconditioner: alpha must lie in (0,1]");
    n_ = weights.M - weights.M0;
    if (n_ < 1) throw std::invalid_argument("PAlphaPreconditioner: need M - M0 >= 1");
    omega_ = weights.omega;
    theta_.resize(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k)
        theta_[static_cast<std::size_t>(k)] = std::pow(alpha_, static_cast<double>(k) / n_);

    lambda_ = p_alpha_eigenvalues(omega_, alpha_);
    for (const auto& l : lambda_)
        if (!(l.real() > 0.0))
            throw std::logic_error(
                "PAlphaPreconditioner: eigenvalue with non-positive real part "
                "(weight invariant violated)");

    if (n_ >= 2) {
        const std::size_t ns = op_->field_size();
        std::vector<std::complex<double>> a(static_cast<std::size_t>(n_) * ns), b(a.size());
        time_f_ = fftw_plan_many_dft(1, &n_, static_cast<int>(ns),
                                     reinterpret_cast<fftw_complex*>(a.data()), nullptr,
                                     static_cast<int>(ns), 1,
                                     reinterpret_cast<fftw_complex*>(b.data()), nullptr,
                                     static_cast<int>(ns), 1, FFTW_BACKWARD,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        time_fstar_ = fftw_plan_many_dft(1, &n_, static_cast<int>(ns),
                                         reinterpret_cast<fftw_complex*>(a.data()), nullptr,
                                         static_cast<int>(ns), 1,
                                         reinterpret_cast<fftw_complex*>(b.data()), nullptr,
                                         static_cast<int>(ns), 1, FFTW_FORWARD,
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (time_f_ == nullptr || time_fstar_ == nullptr)
            throw std::runtime_error("PAlphaPreconditioner: transform planning failed");
    }
}

PAlphaPreconditioner::~PAlphaPreconditioner() {
    if (time_f_ != nullptr) fftw_destroy_plan(time_f_);
    if (time_fstar_ != nullptr) fftw_destroy_plan(time_fstar_);
}

PAlphaPreconditioner::PAlphaPreconditioner(PAlphaPreconditioner&& other) noexcept
    : op_(other.op_),
      alpha_(other.alpha_),
      half_(other.half_),
      n_(other.n_),
      omega_(std::move(other.omega_)),
      theta_(std::move(other.theta_)),
      lambda_(std::move(other.lambda_)),
      time_f_(other.time_f_),
      time_fstar_(other.time_fstar_) {
    threads = other.threads;
    other.time_f_ = nullptr;
    other.time_fstar_ = nullptr;
}

PAlphaPreconditioner& PAlphaPreconditioner::operator=(PAlphaPreconditioner&& other) noexcept {
    if (this != &other) {
        if (time_f_ != nullptr) fftw_destroy_plan(time_f_);
        if (time_fstar_ != nullptr) fftw_destroy_plan(time_fstar_);
        op_ = other.op_;
        alpha_ = other.alpha_;
        half_ = other.half_;
        n_ = other.n_;
        omega_ = std::move(other.omega_);
        theta_ = std::move(other.theta_);
        lambda_ = std::move(other.lambda_);
        time_f_ = other.time_f_;
        time_fstar_ = other.time_fstar_;
        threads = other.threads;
        other.time_f_ = nullptr;
        other.time_fstar_ = nullptr;
    }
    return *this;
}

int PAlphaPreconditioner::frequency_solve_count() const {
    return half_ ? (n_ + 2) / 2 : n_;  // ceil((n+1)/2)
}

void PAlphaPreconditioner::frequency_solves(std::complex<double>* buf) const {
    const std::size_t ns = op_->field_size();
    const std::vector<double>& lam = op_->eig_full();
    const int solves = frequency_solve_count();

#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
    for (int f = 0; f < solves; ++f) {
        std::complex<double>* row = buf + static_cast<std::size_t>(f) * ns;
        std::vector<double> re(ns), im(ns), tre(ns), tim(ns);
        for (std::size_t m = 0; m < ns; ++m) {
            re[m] = row[m].real();
            im[m] = row[m].imag();
        }
        op_->dst2(re, tre);
        op_->dst2(im, tim);
        const std::complex<double> shift = lambda_[static_cast<std::size_t>(f)];
        for (std::size_t m = 0; m < ns; ++m) {
            const std::complex<double> z =
                std::complex<double>(tre[m], tim[m]) / (shift - lam[m]);
            tre[m] = z.real();
            tim[m] = z.imag();
        }
        op_->dst2(tre, re);
        op_->dst2(tim, im);
        for (std::size_t m = 0; m < ns; ++m) row[m] = {re[m], im[m]};
    }

    if (half_) {
        // Conjugate symmetry of the remaining frequencies (real input).
        for (int f = solves; f < n_; ++f) {
            const std::complex<double>* src = buf + static_cast<std::size_t>(n_ - f) * ns;
            std::complex<double>* dst = buf + static_cast<std::size_t>(f) * ns;
            for (std::size_t m = 0; m < ns; ++m) dst[m] = std::conj(src[m]);
        }
    }
}

void PAlphaPreconditioner::apply_inverse(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_->field_size();
    if (v.blocks != n_ || v.block_size != ns || out.blocks != n_ || out.block_size != ns)
        throw std::invalid_argument("PAlphaPreconditioner::apply_inverse: size mismatch");

    if (n_ == 1) {  // single uniform step: one shifted sine-diagonal solve
        op_->solve_shifted(omega_[0], {v.block(0), ns}, {out.block(0), ns});
        return;
    }

    const std::size_t total = static_cast<std::size_t>(n_) * ns;
    std::vector<std::complex<double>> buf(total), hat(total);
    for (int k = 0; k < n_; ++k) {
        const double scale = theta_[static_cast<std::size_t>(k)];  // Theta^{-1}
        const double* vk = v.block(k);
        std::complex<double>* row = buf.data() + static_cast<std::size_t>(k) * ns;
        for (std::size_t m = 0; m < ns; ++m) row[m] = scale * vk[m];
    }
    fftw_execute_dft(time_f_, reinterpret_cast<fftw_complex*>(buf.data()),
                     reinterpret_cast<fftw_complex*>(hat.data()));

    frequency_solves(hat.data());

    fftw_execute_dft(time_fstar_, reinterpret_cast<fftw_complex*>(hat.data()),
                     reinterpret_cast<fftw_complex*>(buf.data()));

    double norm_re = 0.0, norm_im = 0.0;
    const double inv_n = 1.0 / n_;
    for (int k = 0; k < n_; ++k) {
        const double scale = inv_n / theta_[static_cast<std::size_t>(k)];  // Theta
        const std::complex<double>* row = buf.data() + static_cast<std::size_t>(k) * ns;
        double* o = out.block(k);
        for (std::size_t m = 0; m < ns; ++m) {
            const double re = row[m].real() * scale;
            const double im = row[m].imag() * scale;
            o[m] = re;
            norm_re += re * re;
            norm_im += im * im;
        }
    }
    if (std::sqrt(norm_im) > 1e-9 * std::max(std::sqrt(norm_re), 1e-300))
        throw NumericalBreakdown(
            "PAlphaPreconditioner: imaginary residue above tolerance");
}

void PAlphaPreconditioner::apply(const BlockVector& v, BlockVector& out) const {
    const std::size_t ns = op_->field_size();
    if (v.blocks != n_ || v.block_size != ns || out.blocks != n_ || out.block_size != ns)
        throw std::invalid_argument("PAlphaPreconditioner::apply: size mismatch");
    std::vector<double> bv(ns);
    for (int k = 0; k < n_; ++k) {
        double* o = out.block(k);
        std::fill(o, o + ns, 0.0);
        for (int l = 0; l <= k; ++l) {
            const double c = omega_[static_cast<std::size_t>(k - l)];
            const double* vl = v.block(l);
            for (std::size_t m = 0; m < ns; ++m) o[m] += c * vl[m];
        }
        for (int l = k + 1; l < n_; ++l) {  // alpha-weighted wrap-around part
            const double c = alpha_ * omega_[static_cast<std::size_t>(n_ - l + k)];
            const double* vl = v.block(l);
            for (std::size_t m = 0; m < ns; ++m) o[m] += c * vl[m];
        }
        op_->apply({v.block(k), ns}, bv);
        for (std::size_t m = 0; m < ns; ++m) o[m] -= bv[m];
    }
}

}  // namespace subdiff
