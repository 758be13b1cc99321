#pragma once

#include <Eigen/Dense>
#include <complex>

#include "supres/errors.hpp"

namespace supres {

// Real-valued 2-D raster, row-major, double precision. Pixel values of
// observed/original images live nominally in [0,1]; reconstructions and
// residuals may exceed that range.
using ImageGrid =
    Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Complex-valued 2-D raster on a frequency grid. Bin (0,0) is DC; no
// fftshift in storage.
using Spectrum = Eigen::Array<std::complex<double>, Eigen::Dynamic,
                              Eigen::Dynamic, Eigen::RowMajor>;

// Unitary 2-D DFT: forward and inverse each carry a 1/sqrt(rows*cols)
// factor, so dft2 is an isometry (Parseval: ||x||_2 == ||dft2(x)||_2).
Spectrum dft2(const ImageGrid& img);
Spectrum dft2(const Spectrum& spec);

// Unitary inverse transform of a conjugate-symmetric spectrum. Returns the
// real part; throws SymmetryViolation if the imaginary residue exceeds
// rel_tol * ||spectrum||_2, which signals a spectral-algebra bug upstream.
ImageGrid idft2(const Spectrum& spec, double rel_tol = 1e-9);

// Inverse transform without the realness check, for complex-valued use.
Spectrum idft2_complex(const Spectrum& spec);

// Periodic (circular) 2-D convolution of two same-shaped grids. Matches the
// direct double-sum definition; computed as
// sqrt(rows*cols) * idft2(dft2(a) * dft2(b)).
ImageGrid circular_convolve(const ImageGrid& a, const ImageGrid& b);

inline void require_same_shape(const ImageGrid& a, const ImageGrid& b,
                               const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch(std::string(what) + ": shapes " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

}  // namespace supres
