#include "subdiff/bicgstab.hpp"

#include <cmath>
#include <stdexcept>

namespace subdiff {

KrylovResult bicgstab(const LinearOp& matvec, const LinearOp& precond,
                      const BlockVector& b, const KrylovConfig& config) {
    if (!(config.rtol > 0.0) || !(config.rtol < 1.0))
        throw std::invalid_argument("bicgstab: rtol must lie in (0,1)");
    if (config.maxit < 1) throw std::invalid_argument("bicgstab: maxit must be >= 1");

    KrylovResult res;
    res.solution = BlockVector(b.blocks, b.block_size);

    const double n2b = norm2(b);
    if (!std::isfinite(n2b)) throw std::invalid_argument("bicgstab: rhs is not finite");
    if (n2b == 0.0) {
        res.converged = true;
        return res;
    }
    const double tolb = config.rtol * n2b;

    BlockVector& x = res.solution;  // zero initial guess, so r0 = b
    BlockVector r = b;
    double normr = n2b;
    if (config.record_history) res.residual_history.push_back(normr / n2b);
    if (normr <= tolb) {
        res.converged = true;
        return res;
    }

    const BlockVector rt = r;  // fixed shadow residual
    double rho = 1.0, omega = 1.0, alpha = 0.0;
    BlockVector p(b.blocks, b.block_size), v(b.blocks, b.block_size);
    BlockVector s(b.blocks, b.block_size), t(b.blocks, b.block_size);
    BlockVector ph(b.blocks, b.block_size), sh(b.blocks, b.block_size);

    for (int it = 1; it <= config.maxit; ++it) {
        const double rho1 = rho;
        rho = dot(rt, r);
        if (rho == 0.0 || !std::isfinite(rho)) {
            res.breakdown = "rho";
            break;
        }
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho / rho1) * (alpha / omega);
            if (beta == 0.0 || !std::isfinite(beta)) {
                res.breakdown = "beta";
                break;
            }
            // p = r + beta (p - omega v)
            for (std::size_t i = 0; i < p.data.size(); ++i)
                p.data[i] = r.data[i] + beta * (p.data[i] - omega * v.data[i]);
        }

        if (precond)
            precond(p, ph);
        else
            ph = p;
        matvec(ph, v);

        const double rtv = dot(rt, v);
        if (rtv == 0.0 || !std::isfinite(rtv)) {
            res.breakdown = "rho";
            break;
        }
        alpha = rho / rtv;
        if (!std::isfinite(alpha)) {
            res.breakdown = "alpha";
            break;
        }

        axpy(alpha, ph, x);
        for (std::size_t i = 0; i < s.data.size(); ++i)
            s.data[i] = r.data[i] - alpha * v.data[i];
        normr = norm2(s);
        if (config.record_history) res.residual_history.push_back(normr / n2b);
        if (normr <= tolb) {
            res.converged = true;
            res.iterations = it - 0.5;
            return res;
        }

        if (precond)
            precond(s, sh);
        else
            sh = s;
        matvec(sh, t);

        const double tt = dot(t, t);
        if (tt == 0.0 || !std::isfinite(tt)) {
            res.breakdown = "omega";
            break;
        }
        omega = dot(t, s) / tt;
        if (!std::isfinite(omega)) {
            res.breakdown = "omega";
            break;
        }

        axpy(omega, sh, x);
        for (std::size_t i = 0; i < r.data.size(); ++i)
            r.data[i] = s.data[i] - omega * t.data[i];
        normr = norm2(r);
        if (config.record_history) res.residual_history.push_back(normr / n2b);
        res.iterations = it;
        if (normr <= tolb) {
            res.converged = true;
            return res;
        }
    }

    res.converged = false;  // breakdown or iteration cap
    return res;
}

}  // namespace subdiff
