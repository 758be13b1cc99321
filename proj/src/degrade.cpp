#include "supres/degrade.hpp"

#include <cmath>

namespace supres {

ImageGrid gaussian_kernel(const GaussianPsfSpec& spec) {
    if (spec.band < 1 || spec.band % 2 == 0)
        throw EvenBand("gaussian_kernel: band must be a positive odd integer");
    if (!(spec.sigma_psf > 0.0))
        throw InvalidArgument("gaussian_kernel: sigma_psf must be positive");
    const int band = spec.band;
    const double c = (band - 1) / 2.0;
    const double inv2s2 = 1.0 / (2.0 * spec.sigma_psf * spec.sigma_psf);
    ImageGrid k(band, band);
    for (int i = 0; i < band; ++i)
        for (int j = 0; j < band; ++j)
            k(i, j) = std::exp(-((i - c) * (i - c) + (j - c) * (j - c)) *
                               inv2s2);
    return k / k.sum();
}

namespace {

// splitmix64 output function; the state is seed + counter * golden gamma,
// so word t is addressable without generating words 0..t-1.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Top 53 bits to a double in (0,1]; never 0, so log() below is safe.
inline double to_unit(std::uint64_t z) {
    return (double(z >> 11) + 1.0) * 0x1p-53;
}

}  // namespace

ImageGrid gaussian_field(Eigen::Index rows, Eigen::Index cols,
                         std::uint64_t seed) {
    ImageGrid out(rows, cols);
    const double two_pi = 2.0 * M_PI;
    for (Eigen::Index t = 0; t < rows * cols; ++t) {
        const double u1 = to_unit(splitmix64_at(seed, 2 * std::uint64_t(t)));
        const double u2 =
            to_unit(splitmix64_at(seed, 2 * std::uint64_t(t) + 1));
        out.data()[t] = std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }
    return out;
}

DegradeResult degrade(const ImageGrid& x_true, const GaussianPsfSpec& psf,
                      DecimationFactors f, const NoiseSpec& noise) {
    require_divisible(x_true.rows(), x_true.cols(), f, "degrade");
    if (noise.sigma < 0.0)
        throw InvalidArgument("degrade: sigma must be non-negative");
    const DegradationOperator op = make_degradation_operator(
        gaussian_kernel(psf), x_true.rows(), x_true.cols(), f);
    DegradeResult res;
    res.e = noise.sigma *
            gaussian_field(x_true.rows() / f.d_r, x_true.cols() / f.d_c,
                           noise.seed);
    res.b = downsample(apply_blur(x_true, op), f) + res.e;
    return res;
}

std::optional<DegradationPreset> preset_by_name(std::string_view name) {
    if (name == "test1")
        return DegradationPreset{{9, 2.0}, {4, 4}, 0.05};
    if (name == "test2")
        return DegradationPreset{{13, 3.0}, {4, 4}, 0.1};
    return std::nullopt;
}

}  // namespace supres
