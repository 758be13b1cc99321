#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "supres/whiteness.hpp"

namespace supres {

// NetPBM binary PGM (P5, 8- or 16-bit big-endian) mapped to [0,1] by
// dividing by maxval, or grayscale PFM ("Pf", float32 scanlines stored
// bottom-to-top, scale-line sign giving endianness) read verbatim.
ImageGrid read_image(const std::filesystem::path& path);

enum class ImageFormat { pgm8, pgm16, pfm };

// Infers pgm16 for ".pgm" and pfm for ".pfm".
std::optional<ImageFormat> format_from_extension(
    const std::filesystem::path& path);

// PGM formats clamp to [0,1] and quantise round-half-up; PFM writes the
// values as float32 (lossless at that precision, keeps negatives).
void write_image(const ImageGrid& grid, const std::filesystem::path& path,
                 ImageFormat format);

// Flat key-value experiment sidecar; every field optional, serialisation
// order fixed, doubles at full precision so parse(serialize(m)) == m.
struct ExperimentMeta {
    std::optional<int> band;
    std::optional<double> psf_sigma;
    std::optional<int> decim_r;
    std::optional<int> decim_c;
    std::optional<double> noise_sigma;
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<double> grid_lo;
    std::optional<double> grid_hi;
    std::optional<int> grid_count;
    std::optional<double> mu_star;
    std::optional<double> tau_star;
    std::optional<std::string> strategy;

    bool operator==(const ExperimentMeta&) const = default;
};

std::string serialize_meta(const ExperimentMeta& meta);
ExperimentMeta parse_meta(const std::string& text);

// The degradation parameters the solver is allowed to see: structurally
// incapable of carrying the noise level, so sigma cannot leak into
// sigma-free selection paths.
struct SolveInputs {
    std::optional<int> band;
    std::optional<double> psf_sigma;
    std::optional<int> decim_r;
    std::optional<int> decim_c;
};

SolveInputs parse_meta_sigma_free(const std::string& text);

void write_meta(const ExperimentMeta& meta, const std::filesystem::path& path);
ExperimentMeta read_meta(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

// Optional per-mu quality columns for sweep exports.
struct CurveMetrics {
    std::vector<double> psnr, isnr, ssim;
};

// CSV "mu,tau,W[,psnr,isnr,ssim]", 17 significant digits, LF endings.
void write_curve(const WhitenessCurve& curve, const std::filesystem::path& path);
void write_curve(const WhitenessCurve& curve, const CurveMetrics& metrics,
                 const std::filesystem::path& path);

}  // namespace supres
