#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "supres/linops.hpp"

namespace supres {

// fspecial-style isotropic Gaussian blur kernel: odd square support of
// `band` pixels, standard deviation sigma_psf pixels, normalised to sum 1.
struct GaussianPsfSpec {
    int band = 9;
    double sigma_psf = 2.0;
};

ImageGrid gaussian_kernel(const GaussianPsfSpec& spec);

// Additive white Gaussian noise: standard deviation in intensity units and
// the seed of the deterministic stream that realises it.
struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 1;
};

// Deterministic, platform-independent N(0,1) variates: pixel t draws two
// 64-bit words from a splitmix64 counter stream at counters 2t and 2t+1,
// maps them to (0,1], and applies the Box-Muller transform. The same seed
// yields a bit-identical field on every platform with IEEE doubles.
ImageGrid gaussian_field(Eigen::Index rows, Eigen::Index cols,
                         std::uint64_t seed);

struct DegradeResult {
    ImageGrid b;  // blurred, decimated, noisy observation (LR)
    ImageGrid e;  // the noise realisation actually added (LR)
};

// The forward model b = S K x + e.
DegradeResult degrade(const ImageGrid& x_true, const GaussianPsfSpec& psf,
                      DecimationFactors f, const NoiseSpec& noise);

// Named degradation settings reachable from the CLI.
struct DegradationPreset {
    GaussianPsfSpec psf;
    DecimationFactors factors;
    double sigma;
};

// "test1": band=9, sigma_psf=2, d=4x4, sigma=0.05
// "test2": band=13, sigma_psf=3, d=4x4, sigma=0.1
std::optional<DegradationPreset> preset_by_name(std::string_view name);

}  // namespace supres
