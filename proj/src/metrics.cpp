#include "supres/metrics.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace supres {

double psnr(const ImageGrid& x_true, const ImageGrid& x_est) {
    require_same_shape(x_true, x_est, "psnr");
    const double err = std::sqrt((x_true - x_est).square().sum());
    if (err == 0.0)
        throw IdenticalImages("psnr: images are identical (infinite PSNR)");
    const double peak = std::max(x_true.maxCoeff(), x_est.maxCoeff());
    const double root_n =
        std::sqrt(double(x_true.rows()) * double(x_true.cols()));
    return 20.0 * std::log10(root_n * peak / err);
}

double isnr(const ImageGrid& x_true, const ImageGrid& x_est,
            const ImageGrid& b_interp, IsnrConvention convention) {
    require_same_shape(x_true, x_est, "isnr");
    require_same_shape(x_true, b_interp, "isnr");
    const double err_est = std::sqrt((x_true - x_est).square().sum());
    const double err_ref = std::sqrt((x_true - b_interp).square().sum());
    if (err_est == 0.0)
        throw IdenticalImages("isnr: estimate equals the reference image");
    const double ratio = err_ref / err_est;
    return convention == IsnrConvention::paper ? 10.0 * std::log10(ratio)
                                               : 20.0 * std::log10(ratio);
}

namespace {

constexpr int kSsimRadius = 5;  // 11x11 window
constexpr double kSsimSigma = 1.5;
constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;

// Mirror (symmetric) index reflection: ... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} ...
inline Eigen::Index reflect(Eigen::Index i, Eigen::Index n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

Eigen::Array<double, 2 * kSsimRadius + 1, 1> ssim_window() {
    Eigen::Array<double, 2 * kSsimRadius + 1, 1> w;
    for (int t = -kSsimRadius; t <= kSsimRadius; ++t)
        w(t + kSsimRadius) =
            std::exp(-(t * t) / (2.0 * kSsimSigma * kSsimSigma));
    return w / w.sum();
}

// Separable Gaussian filtering with symmetric padding.
ImageGrid gauss_filter(const ImageGrid& x) {
    static const auto w = ssim_window();
    const Eigen::Index rows = x.rows(), cols = x.cols();
    ImageGrid tmp(rows, cols), out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            double acc = 0.0;
            for (int t = -kSsimRadius; t <= kSsimRadius; ++t)
                acc += w(t + kSsimRadius) * x(i, reflect(j + t, cols));
            tmp(i, j) = acc;
        }
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            double acc = 0.0;
            for (int t = -kSsimRadius; t <= kSsimRadius; ++t)
                acc += w(t + kSsimRadius) * tmp(reflect(i + t, rows), j);
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace

double ssim(const ImageGrid& a, const ImageGrid& b) {
    require_same_shape(a, b, "ssim");
    const double c1 = kSsimK1 * kSsimK1;  // L = 1
    const double c2 = kSsimK2 * kSsimK2;

    ImageGrid mu_a = gauss_filter(a);
    ImageGrid mu_b = gauss_filter(b);
    ImageGrid sigma_a = gauss_filter(ImageGrid(a * a)) - mu_a * mu_a;
    ImageGrid sigma_b = gauss_filter(ImageGrid(b * b)) - mu_b * mu_b;
    ImageGrid sigma_ab = gauss_filter(ImageGrid(a * b)) - mu_a * mu_b;

    ImageGrid map = ((2.0 * mu_a * mu_b + c1) * (2.0 * sigma_ab + c2)) /
                    ((mu_a.square() + mu_b.square() + c1) *
                     (sigma_a + sigma_b + c2));
    return map.mean();
}

namespace {

// Catmull-Rom family cubic, a = -0.5.
inline double cubic_weight(double s) {
    constexpr double a = -0.5;
    s = std::abs(s);
    if (s <= 1.0) return ((a + 2.0) * s - (a + 3.0)) * s * s + 1.0;
    if (s < 2.0) return ((a * s - 5.0 * a) * s + 8.0 * a) * s - 4.0 * a;
    return 0.0;
}

inline Eigen::Index wrap(Eigen::Index i, Eigen::Index n) {
    i %= n;
    return i < 0 ? i + n : i;
}

}  // namespace

ImageGrid bicubic_upsample(const ImageGrid& lr, DecimationFactors f) {
    if (f.d_r < 1 || f.d_c < 1)
        throw InvalidArgument("bicubic_upsample: factors must be positive");
    const Eigen::Index rows_hr = lr.rows() * f.d_r;
    const Eigen::Index cols_hr = lr.cols() * f.d_c;

    // Output sample I lies at LR coordinate I/d; only I mod d distinct
    // fractional phases exist, so the 4-tap weights are tabulated per phase.
    auto phase_weights = [](int d) {
        std::vector<std::array<double, 4>> w(std::size_t(d));
        for (int p = 0; p < d; ++p) {
            const double frac = double(p) / d;
            for (int k = -1; k <= 2; ++k)
                w[std::size_t(p)][std::size_t(k + 1)] =
                    cubic_weight(frac - k);
        }
        return w;
    };
    const auto wr = phase_weights(f.d_r);
    const auto wc = phase_weights(f.d_c);

    // Rows first: interpolate each LR row to HR column resolution.
    ImageGrid tmp(lr.rows(), cols_hr);
    for (Eigen::Index i = 0; i < lr.rows(); ++i) {
        for (Eigen::Index J = 0; J < cols_hr; ++J) {
            const Eigen::Index j0 = J / f.d_c;
            const auto& w = wc[std::size_t(J % f.d_c)];
            double acc = 0.0;
            for (int k = -1; k <= 2; ++k)
                acc += w[std::size_t(k + 1)] * lr(i, wrap(j0 + k, lr.cols()));
            tmp(i, J) = acc;
        }
    }
    ImageGrid out(rows_hr, cols_hr);
    for (Eigen::Index J = 0; J < cols_hr; ++J) {
        for (Eigen::Index I = 0; I < rows_hr; ++I) {
            const Eigen::Index i0 = I / f.d_r;
            const auto& w = wr[std::size_t(I % f.d_r)];
            double acc = 0.0;
            for (int k = -1; k <= 2; ++k)
                acc += w[std::size_t(k + 1)] * tmp(wrap(i0 + k, lr.rows()), J);
            out(I, J) = acc;
        }
    }
    return out;
}

}  // namespace supres
