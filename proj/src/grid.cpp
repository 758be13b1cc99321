#include "supres/grid.hpp"

#include <unsupported/Eigen/FFT>

namespace supres {

namespace {

// Raw (unscaled) forward DFT along rows then columns. Eigen's FFT object
// caches plans per length; one instance per thread keeps grid ops safe to
// call concurrently.
Spectrum raw_fwd2(const Spectrum& in) {
    thread_local Eigen::FFT<double> fft;
    const Eigen::Index rows = in.rows(), cols = in.cols();
    Spectrum out(rows, cols);
    Eigen::VectorXcd buf_in, buf_out;
    buf_in.resize(cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) buf_in(j) = in(i, j);
        fft.fwd(buf_out, buf_in);
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = buf_out(j);
    }
    buf_in.resize(rows);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) buf_in(i) = out(i, j);
        fft.fwd(buf_out, buf_in);
        for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = buf_out(i);
    }
    return out;
}

// Inverse DFT along rows then columns; Eigen scales each pass by 1/n, so
// the result carries a 1/(rows*cols) factor relative to the raw adjoint.
Spectrum scaled_inv2(const Spectrum& in) {
    thread_local Eigen::FFT<double> fft;
    const Eigen::Index rows = in.rows(), cols = in.cols();
    Spectrum out(rows, cols);
    Eigen::VectorXcd buf_in, buf_out;
    buf_in.resize(cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) buf_in(j) = in(i, j);
        fft.inv(buf_out, buf_in);
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = buf_out(j);
    }
    buf_in.resize(rows);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) buf_in(i) = out(i, j);
        fft.inv(buf_out, buf_in);
        for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = buf_out(i);
    }
    return out;
}

void require_nonempty(Eigen::Index rows, Eigen::Index cols) {
    if (rows < 1 || cols < 1)
        throw InvalidArgument("dft2: grid must be at least 1x1");
}

}  // namespace

Spectrum dft2(const Spectrum& spec) {
    require_nonempty(spec.rows(), spec.cols());
    const double scale =
        1.0 / std::sqrt(double(spec.rows()) * double(spec.cols()));
    return raw_fwd2(spec) * scale;
}

Spectrum dft2(const ImageGrid& img) {
    require_nonempty(img.rows(), img.cols());
    return dft2(Spectrum(img.cast<std::complex<double>>()));
}

Spectrum idft2_complex(const Spectrum& spec) {
    require_nonempty(spec.rows(), spec.cols());
    const double scale =
        std::sqrt(double(spec.rows()) * double(spec.cols()));
    return scaled_inv2(spec) * scale;
}

ImageGrid idft2(const Spectrum& spec, double rel_tol) {
    Spectrum z = idft2_complex(spec);
    const double norm = std::sqrt(z.abs2().sum());
    const double imag_norm = std::sqrt(z.imag().square().sum());
    if (imag_norm > rel_tol * norm) {
        throw SymmetryViolation(
            "idft2: imaginary residue " + std::to_string(imag_norm) +
            " exceeds " + std::to_string(rel_tol) + " * ||spectrum|| = " +
            std::to_string(rel_tol * norm));
    }
    return z.real();
}

ImageGrid circular_convolve(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b, "circular_convolve");
    const double root_n = std::sqrt(double(a.rows()) * double(a.cols()));
    Spectrum prod = dft2(a) * dft2(b);
    // Product of spectra of real inputs is conjugate-symmetric; a loose
    // tolerance here only guards against NaN inputs.
    return idft2(prod, 1e-6) * root_n;
}

}  // namespace supres
