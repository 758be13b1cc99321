#pragma once

#include <optional>

#include "supres/linops.hpp"

namespace supres {

// PSNR = 20 log10( sqrt(N) max(x, x*) / ||x - x*||_2 ), with the max taken
// over the entries of both images.
double psnr(const ImageGrid& x_true, const ImageGrid& x_est);

// The printed definition uses a plain norm ratio inside 10 log10; the
// conventional definition squares the norms (doubling the dB value). Both
// are available.
enum class IsnrConvention { paper, squared };

// ISNR = 10 log10( ||x - b_interp|| / ||x - x_est|| )   (paper)
//      = 10 log10( ||x - b_interp||^2 / ||x - x_est||^2 ) (squared)
double isnr(const ImageGrid& x_true, const ImageGrid& x_est,
            const ImageGrid& b_interp,
            IsnrConvention convention = IsnrConvention::paper);

// Mean SSIM with the reference construction: 11x11 Gaussian window of
// std 1.5, K1 = 0.01, K2 = 0.03, dynamic range L = 1, symmetric boundary
// handling.
double ssim(const ImageGrid& a, const ImageGrid& b);

// Separable Catmull-Rom cubic interpolation (a = -0.5) to the HR grid, with
// periodic boundary extension. Exact on constants; identity for d = 1.
ImageGrid bicubic_upsample(const ImageGrid& lr, DecimationFactors f);

struct QualityReport {
    double psnr = 0.0;
    double isnr = 0.0;
    double ssim = 0.0;
    std::optional<double> tau_star;
};

}  // namespace supres
