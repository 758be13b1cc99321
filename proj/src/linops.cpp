#include "supres/linops.hpp"

namespace supres {

void require_divisible(Eigen::Index hr_rows, Eigen::Index hr_cols,
                       DecimationFactors f, const char* what) {
    if (f.d_r < 1 || f.d_c < 1)
        throw InvalidArgument(std::string(what) +
                              ": decimation factors must be positive");
    if (hr_rows % f.d_r != 0 || hr_cols % f.d_c != 0) {
        throw ShapeMismatch(std::string(what) + ": HR shape " +
                            std::to_string(hr_rows) + "x" +
                            std::to_string(hr_cols) +
                            " not divisible by factors " +
                            std::to_string(f.d_r) + "x" +
                            std::to_string(f.d_c));
    }
}

ImageGrid downsample(const ImageGrid& x_hr, DecimationFactors f) {
    require_divisible(x_hr.rows(), x_hr.cols(), f, "downsample");
    ImageGrid out(x_hr.rows() / f.d_r, x_hr.cols() / f.d_c);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        for (Eigen::Index j = 0; j < out.cols(); ++j)
            out(i, j) = x_hr(i * f.d_r, j * f.d_c);
    return out;
}

ImageGrid upsample_zero(const ImageGrid& y_lr, DecimationFactors f) {
    if (f.d_r < 1 || f.d_c < 1)
        throw InvalidArgument("upsample_zero: factors must be positive");
    ImageGrid out = ImageGrid::Zero(y_lr.rows() * f.d_r, y_lr.cols() * f.d_c);
    for (Eigen::Index i = 0; i < y_lr.rows(); ++i)
        for (Eigen::Index j = 0; j < y_lr.cols(); ++j)
            out(i * f.d_r, j * f.d_c) = y_lr(i, j);
    return out;
}

ImageGrid embed_kernel(const ImageGrid& kernel, int anchor_r, int anchor_c,
                       Eigen::Index rows, Eigen::Index cols) {
    if (rows < 1 || cols < 1)
        throw InvalidArgument("embed_kernel: empty target grid");
    ImageGrid out = ImageGrid::Zero(rows, cols);
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
        for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
            Eigen::Index r = (i - anchor_r) % rows;
            Eigen::Index c = (j - anchor_c) % cols;
            if (r < 0) r += rows;
            if (c < 0) c += cols;
            // += so kernels wider than the grid periodise correctly.
            out(r, c) += kernel(i, j);
        }
    }
    return out;
}

namespace {

// Eigenvalues of periodic convolution with an already-embedded kernel: the
// raw (unscaled) DFT, i.e. sqrt(N) times the unitary transform.
Spectrum kernel_eigenvalues(const ImageGrid& embedded) {
    const double root_n =
        std::sqrt(double(embedded.rows()) * double(embedded.cols()));
    return Spectrum(dft2(embedded) * root_n);
}

}  // namespace

DegradationOperator make_degradation_operator(const ImageGrid& kernel,
                                              int anchor_r, int anchor_c,
                                              Eigen::Index hr_rows,
                                              Eigen::Index hr_cols,
                                              DecimationFactors f) {
    require_divisible(hr_rows, hr_cols, f, "make_degradation_operator");
    DegradationOperator op;
    op.psf = embed_kernel(kernel, anchor_r, anchor_c, hr_rows, hr_cols);
    op.otf = kernel_eigenvalues(op.psf);
    op.factors = f;
    op.identity_blur =
        op.psf(0, 0) == 1.0 && op.psf.abs().sum() == 1.0;
    return op;
}

DegradationOperator make_degradation_operator(const ImageGrid& kernel,
                                              Eigen::Index hr_rows,
                                              Eigen::Index hr_cols,
                                              DecimationFactors f) {
    return make_degradation_operator(
        kernel, int(kernel.rows() - 1) / 2, int(kernel.cols() - 1) / 2,
        hr_rows, hr_cols, f);
}

ImageGrid apply_blur(const ImageGrid& x, const DegradationOperator& op) {
    if (x.rows() != op.hr_rows() || x.cols() != op.hr_cols())
        throw ShapeMismatch("apply_blur: image not on the operator's HR grid");
    if (op.identity_blur) return x;
    return idft2(Spectrum(op.otf * dft2(x)), 1e-6);
}

RegularizerBlock make_regularizer_block(const ImageGrid& kernel, int anchor_r,
                                        int anchor_c, Eigen::Index rows,
                                        Eigen::Index cols,
                                        const ImageGrid& target) {
    if (target.rows() != rows || target.cols() != cols)
        throw ShapeMismatch("make_regularizer_block: target not HR-sized");
    RegularizerBlock blk;
    blk.kernel_hr = embed_kernel(kernel, anchor_r, anchor_c, rows, cols);
    blk.gamma = kernel_eigenvalues(blk.kernel_hr);
    blk.target = target;
    return blk;
}

ImageGrid gamma_sq(const RegularizerStack& reg, Eigen::Index rows,
                   Eigen::Index cols) {
    ImageGrid acc = ImageGrid::Zero(rows, cols);
    for (const auto& blk : reg.blocks) {
        if (blk.gamma.rows() != rows || blk.gamma.cols() != cols)
            throw ShapeMismatch("gamma_sq: block not on the requested grid");
        acc += blk.gamma.abs2();
    }
    return acc;
}

ImageGrid regularizer_psi(const RegularizerStack& reg, Eigen::Index rows,
                          Eigen::Index cols) {
    if (!(reg.epsilon > 0.0))
        throw InvalidArgument("regularizer_psi: epsilon must be positive");
    return 1.0 / (gamma_sq(reg, rows, cols) + reg.epsilon);
}

RegularizerStack build_difference_regularizer(Eigen::Index rows,
                                              Eigen::Index cols,
                                              double epsilon) {
    if (!(epsilon > 0.0))
        throw InvalidArgument(
            "build_difference_regularizer: epsilon must be positive");
    RegularizerStack reg;
    reg.epsilon = epsilon;
    ImageGrid zero = ImageGrid::Zero(rows, cols);
    // Forward differences as periodic convolutions:
    // (D_h x)(i,j) = x(i, j+1) - x(i, j), wrap at the last column.
    ImageGrid kh(1, 2);
    kh << 1, -1;
    reg.blocks.push_back(make_regularizer_block(kh, 0, 1, rows, cols, zero));
    ImageGrid kv(2, 1);
    kv << 1, -1;
    reg.blocks.push_back(make_regularizer_block(kv, 1, 0, rows, cols, zero));
    return reg;
}

AliasGroups build_alias_groups(Eigen::Index hr_rows, Eigen::Index hr_cols,
                               DecimationFactors f) {
    require_divisible(hr_rows, hr_cols, f, "build_alias_groups");
    AliasGroups g;
    g.hr_rows = hr_rows;
    g.hr_cols = hr_cols;
    g.lr_rows = hr_rows / f.d_r;
    g.lr_cols = hr_cols / f.d_c;
    g.d = f.d();
    const Eigen::Index n = g.lr_rows * g.lr_cols;
    g.members.resize(std::size_t(n) * g.d);
    g.group_of.resize(std::size_t(hr_rows) * hr_cols);
    for (Eigen::Index u = 0; u < g.lr_rows; ++u) {
        for (Eigen::Index v = 0; v < g.lr_cols; ++v) {
            const Eigen::Index group = u * g.lr_cols + v;
            int slot = 0;
            for (int a = 0; a < f.d_r; ++a) {
                for (int b = 0; b < f.d_c; ++b) {
                    const Eigen::Index p = u + Eigen::Index(a) * g.lr_rows;
                    const Eigen::Index q = v + Eigen::Index(b) * g.lr_cols;
                    const Eigen::Index flat = p * hr_cols + q;
                    g.members[std::size_t(group) * g.d + slot] =
                        std::int32_t(flat);
                    g.group_of[std::size_t(flat)] = std::int32_t(group);
                    ++slot;
                }
            }
        }
    }
    return g;
}

}  // namespace supres
