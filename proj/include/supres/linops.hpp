#pragma once

#include <cstdint>
#include <vector>

#include "supres/grid.hpp"

namespace supres {

// Integer decimation factors along rows and columns. HR shape (N_r, N_c)
// must satisfy N_r = n_r * d_r and N_c = n_c * d_c exactly.
struct DecimationFactors {
    int d_r = 1;
    int d_c = 1;

    int d() const { return d_r * d_c; }
};

// Keeps every d_r-th row and d_c-th column, top-left phase:
// out(i, j) = in(i * d_r, j * d_c).
ImageGrid downsample(const ImageGrid& x_hr, DecimationFactors f);

// Adjoint of downsample: places samples at stride positions, zeros
// elsewhere. Norm-preserving; downsample(upsample_zero(y)) == y exactly.
ImageGrid upsample_zero(const ImageGrid& y_lr, DecimationFactors f);

// Periodic blur operator K together with its eigenvalues under the 2-D DFT.
// `psf` is the HR-sized circularly centred kernel embedding; `otf` holds the
// eigenvalues (the raw DFT of `psf`), so the value at DC equals the kernel
// sum.
struct DegradationOperator {
    ImageGrid psf;
    Spectrum otf;
    DecimationFactors factors;
    bool identity_blur = false;  // psf is exactly the unit impulse at (0,0)

    Eigen::Index hr_rows() const { return psf.rows(); }
    Eigen::Index hr_cols() const { return psf.cols(); }
    Eigen::Index lr_rows() const { return psf.rows() / factors.d_r; }
    Eigen::Index lr_cols() const { return psf.cols() / factors.d_c; }
};

// Embeds a small convolution kernel on a rows x cols periodic grid with tap
// (anchor_r, anchor_c) placed at index (0,0) and the other taps wrapped.
ImageGrid embed_kernel(const ImageGrid& kernel, int anchor_r, int anchor_c,
                       Eigen::Index rows, Eigen::Index cols);

// Builds the blur + decimation operator for an HR grid of the given shape.
// The kernel anchor defaults to its centre (kernel sides are typically odd).
DegradationOperator make_degradation_operator(const ImageGrid& kernel,
                                              Eigen::Index hr_rows,
                                              Eigen::Index hr_cols,
                                              DecimationFactors f);
DegradationOperator make_degradation_operator(const ImageGrid& kernel,
                                              int anchor_r, int anchor_c,
                                              Eigen::Index hr_rows,
                                              Eigen::Index hr_cols,
                                              DecimationFactors f);

// K x via spectral multiply; equals direct periodic convolution with psf.
ImageGrid apply_blur(const ImageGrid& x, const DegradationOperator& op);

// One convolutional regularisation block: L_k x - v_k with L_k periodic
// convolution by kernel_hr and eigenvalues gamma.
struct RegularizerBlock {
    ImageGrid kernel_hr;
    Spectrum gamma;
    ImageGrid target;
};

// A stack of convolutional regularisers plus the small epsilon that keeps
// Psi = (sum_k |gamma_k|^2 + epsilon)^{-1} finite at frequencies where the
// stack vanishes (e.g. DC of difference operators).
struct RegularizerStack {
    std::vector<RegularizerBlock> blocks;
    double epsilon = 1e-8;
};

RegularizerBlock make_regularizer_block(const ImageGrid& kernel, int anchor_r,
                                        int anchor_c, Eigen::Index rows,
                                        Eigen::Index cols,
                                        const ImageGrid& target);

// sum_k |gamma_k|^2 per frequency; zero grid for an empty stack.
ImageGrid gamma_sq(const RegularizerStack& reg, Eigen::Index rows,
                   Eigen::Index cols);

// 1 / (gamma_sq + epsilon) per frequency.
ImageGrid regularizer_psi(const RegularizerStack& reg, Eigen::Index rows,
                          Eigen::Index cols);

// First-order forward differences (horizontal and vertical) with periodic
// wrap, targets zero. gamma_sq vanishes at DC, so psi(DC) = 1/epsilon.
RegularizerStack build_difference_regularizer(Eigen::Index rows,
                                              Eigen::Index cols,
                                              double epsilon = 1e-8);

// Partition of the N HR frequency bins into n = N/d alias groups. Group g
// collects the d HR bins {(u + a*n_r, v + b*n_c)} that fold onto LR bin
// (u, v) = (g / n_c, g % n_c) under decimation. Realised by index
// arithmetic; the N x N permutation is never materialised here.
struct AliasGroups {
    Eigen::Index hr_rows = 0, hr_cols = 0;
    Eigen::Index lr_rows = 0, lr_cols = 0;
    int d = 1;
    std::vector<std::int32_t> members;   // size N, group-major
    std::vector<std::int32_t> group_of;  // size N, HR flat index -> group

    Eigen::Index group_count() const { return lr_rows * lr_cols; }
};

AliasGroups build_alias_groups(Eigen::Index hr_rows, Eigen::Index hr_cols,
                               DecimationFactors f);

void require_divisible(Eigen::Index hr_rows, Eigen::Index hr_cols,
                       DecimationFactors f, const char* what);

}  // namespace supres
