#include "supres/solver.hpp"

namespace supres {

SpectralSolveContext prepare_context(const ImageGrid& b,
                                     const DegradationOperator& op,
                                     const RegularizerStack& reg,
                                     const AliasGroups& groups) {
    if (b.rows() != op.lr_rows() || b.cols() != op.lr_cols())
        throw ShapeMismatch("prepare_context: b not on the operator's LR grid");
    if (groups.hr_rows != op.hr_rows() || groups.hr_cols != op.hr_cols() ||
        groups.d != op.factors.d())
        throw ShapeMismatch("prepare_context: alias groups do not match operator");

    SpectralSolveContext ctx;
    ctx.op = op;
    ctx.reg = reg;
    ctx.groups = groups;
    ctx.b_lr = b;
    ctx.bH = dft2(upsample_zero(b, op.factors));
    ctx.psi = regularizer_psi(reg, op.hr_rows(), op.hr_cols());

    ctx.z_reg = Spectrum::Zero(op.hr_rows(), op.hr_cols());
    for (const auto& blk : reg.blocks) {
        if (blk.target.rows() != op.hr_rows() ||
            blk.target.cols() != op.hr_cols())
            throw ShapeMismatch("prepare_context: regulariser target not HR-sized");
        ctx.z_reg += blk.gamma.conjugate() * dft2(blk.target);
    }

    const Eigen::Index n = ctx.groups.group_count();
    const int d = ctx.groups.d;
    const auto* otf = ctx.op.otf.data();
    const auto* psi = ctx.psi.data();
    const auto* bH = ctx.bH.data();
    ctx.omega = Eigen::ArrayXd::Zero(n);
    double b_scale = std::sqrt(ctx.bH.abs2().sum() / double(n * d));
    for (Eigen::Index g = 0; g < n; ++g) {
        double w = 0.0;
        std::complex<double> mean(0.0, 0.0);
        for (int j = 0; j < d; ++j) {
            const auto i = ctx.groups.members[std::size_t(g) * d + j];
            w += std::norm(otf[i]) * psi[i];
            mean += bH[i];
        }
        ctx.omega(g) = w;
        // Replication of F S^H b within each alias group holds by
        // construction; a violation means the transforms disagree.
        mean /= double(d);
        for (int j = 0; j < d; ++j) {
            const auto i = ctx.groups.members[std::size_t(g) * d + j];
            if (std::abs(bH[i] - mean) > 1e-9 * std::max(b_scale, 1e-300))
                throw InternalError(
                    "prepare_context: F S^H b not replicated within alias group");
        }
    }
    return ctx;
}

ImageGrid solve(double mu, const SpectralSolveContext& ctx) {
    if (!(mu > 0.0)) throw NonPositiveMu("solve: mu must be positive");

    const Eigen::Index rows = ctx.op.hr_rows(), cols = ctx.op.hr_cols();
    const Eigen::Index n = ctx.groups.group_count();
    const int d = ctx.groups.d;
    const auto* otf = ctx.op.otf.data();
    const auto* psi = ctx.psi.data();
    const auto* bH = ctx.bH.data();
    const auto* zr = ctx.z_reg.data();

    Spectrum u(rows, cols);
    auto* up = u.data();
    const Eigen::Index total = rows * cols;
    for (Eigen::Index i = 0; i < total; ++i)
        up[i] = psi[i] * (mu * std::conj(otf[i]) * bH[i] + zr[i]);

    Spectrum xhat(rows, cols);
    auto* xp = xhat.data();
    for (Eigen::Index g = 0; g < n; ++g) {
        std::complex<double> s(0.0, 0.0);
        const auto* mem = &ctx.groups.members[std::size_t(g) * d];
        for (int j = 0; j < d; ++j) s += otf[mem[j]] * up[mem[j]];
        const std::complex<double> corr = mu * s / (d + mu * ctx.omega(g));
        for (int j = 0; j < d; ++j) {
            const auto i = mem[j];
            xp[i] = up[i] - psi[i] * std::conj(otf[i]) * corr;
        }
    }
    return idft2(xhat, 1e-6);
}

ImageGrid residual_lr(const ImageGrid& x, const ImageGrid& b,
                      const DegradationOperator& op) {
    if (b.rows() != op.lr_rows() || b.cols() != op.lr_cols())
        throw ShapeMismatch("residual_lr: b not on the operator's LR grid");
    return downsample(apply_blur(x, op), op.factors) - b;
}

}  // namespace supres
