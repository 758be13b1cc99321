#include "supres/imgio.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace supres {

namespace {

std::string load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure("cannot open " + path.string() + " for reading");
    std::string buf((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("read error on " + path.string());
    return buf;
}

void store_file(const std::filesystem::path& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoFailure("cannot open " + path.string() + " for writing");
    out.write(data.data(), std::streamsize(data.size()));
    out.flush();
    if (!out) throw IoFailure("write error on " + path.string());
}

// Header token scanner keeping a byte offset for diagnostics.
struct HeaderScanner {
    const std::string& buf;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw MalformedHeader(what + " at byte " + std::to_string(pos));
    }
    void skip_space_and_comments() {
        while (pos < buf.size()) {
            const char c = buf[pos];
            if (c == '#') {
                while (pos < buf.size() && buf[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }
    std::string token(const char* expect) {
        skip_space_and_comments();
        const std::size_t start = pos;
        while (pos < buf.size() &&
               !std::isspace(static_cast<unsigned char>(buf[pos])))
            ++pos;
        if (pos == start) fail(std::string("expected ") + expect);
        return buf.substr(start, pos - start);
    }
    long integer(const char* expect) {
        const std::string t = token(expect);
        try {
            std::size_t used = 0;
            const long v = std::stol(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            fail(std::string("expected integer ") + expect + ", got '" + t + "'");
        }
    }
    double real(const char* expect) {
        const std::string t = token(expect);
        try {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            fail(std::string("expected real ") + expect + ", got '" + t + "'");
        }
    }
    // The single whitespace byte separating the header from binary samples.
    void raster_separator() {
        if (pos >= buf.size() ||
            !std::isspace(static_cast<unsigned char>(buf[pos])))
            fail("expected whitespace before raster data");
        ++pos;
    }
};

ImageGrid read_pgm(const std::string& buf) {
    HeaderScanner s{buf, 2};
    const long cols = s.integer("width");
    const long rows = s.integer("height");
    const long maxval = s.integer("maxval");
    if (cols < 1 || rows < 1) s.fail("non-positive dimensions");
    if (maxval < 1 || maxval > 65535) s.fail("maxval out of range [1, 65535]");
    s.raster_separator();

    const bool wide = maxval > 255;
    const std::size_t need =
        std::size_t(rows) * std::size_t(cols) * (wide ? 2 : 1);
    if (buf.size() - s.pos < need)
        throw TruncatedData("PGM raster truncated at byte " +
                            std::to_string(buf.size()) + ", need " +
                            std::to_string(s.pos + need) + " bytes");
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data() + s.pos);
    ImageGrid img(rows, cols);
    const double scale = 1.0 / double(maxval);
    for (long i = 0; i < rows * cols; ++i) {
        unsigned v;
        if (wide) {
            v = (unsigned(p[2 * i]) << 8) | unsigned(p[2 * i + 1]);
        } else {
            v = p[i];
        }
        img.data()[i] = double(v) * scale;
    }
    return img;
}

ImageGrid read_pfm(const std::string& buf) {
    HeaderScanner s{buf, 2};
    const long cols = s.integer("width");
    const long rows = s.integer("height");
    const double scale = s.real("scale");
    if (cols < 1 || rows < 1) s.fail("non-positive dimensions");
    if (scale == 0.0) s.fail("zero scale");
    s.raster_separator();

    const std::size_t need = std::size_t(rows) * std::size_t(cols) * 4;
    if (buf.size() - s.pos < need)
        throw TruncatedData("PFM raster truncated at byte " +
                            std::to_string(buf.size()) + ", need " +
                            std::to_string(s.pos + need) + " bytes");
    const bool file_little = scale < 0.0;
    const bool host_little = std::endian::native == std::endian::little;
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data() + s.pos);
    ImageGrid img(rows, cols);
    for (long i = 0; i < rows; ++i) {
        // PFM scanlines are stored bottom-to-top.
        const long row = rows - 1 - i;
        for (long j = 0; j < cols; ++j) {
            unsigned char b[4];
            std::memcpy(b, p + 4 * (i * cols + j), 4);
            if (file_little != host_little) {
                std::swap(b[0], b[3]);
                std::swap(b[1], b[2]);
            }
            float f;
            std::memcpy(&f, b, 4);
            img(row, j) = double(f);
        }
    }
    return img;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ImageGrid read_image(const std::filesystem::path& path) {
    const std::string buf = load_file(path);
    if (buf.size() < 2)
        throw MalformedHeader("file too short for a magic number at byte 0");
    const std::string magic = buf.substr(0, 2);
    if (magic == "P5") return read_pgm(buf);
    if (magic == "Pf") return read_pfm(buf);
    if (magic == "PF")
        throw UnsupportedFormat(
            "color PFM ('PF') not supported at byte 0; use grayscale 'Pf'");
    throw UnsupportedFormat("unrecognised magic '" + magic +
                            "' at byte 0 (want P5 or Pf)");
}

std::optional<ImageFormat> format_from_extension(
    const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".pgm") return ImageFormat::pgm16;
    if (ext == ".pfm") return ImageFormat::pfm;
    return std::nullopt;
}

void write_image(const ImageGrid& grid, const std::filesystem::path& path,
                 ImageFormat format) {
    const Eigen::Index rows = grid.rows(), cols = grid.cols();
    std::string out;
    if (format == ImageFormat::pfm) {
        out = "Pf\n" + std::to_string(cols) + " " + std::to_string(rows) +
              "\n-1.0\n";
        const bool host_little = std::endian::native == std::endian::little;
        for (Eigen::Index i = rows - 1; i >= 0; --i) {
            for (Eigen::Index j = 0; j < cols; ++j) {
                const float f = float(grid(i, j));
                unsigned char b[4];
                std::memcpy(b, &f, 4);
                if (!host_little) {
                    std::swap(b[0], b[3]);
                    std::swap(b[1], b[2]);
                }
                out.append(reinterpret_cast<const char*>(b), 4);
            }
        }
    } else {
        const unsigned maxval = format == ImageFormat::pgm8 ? 255u : 65535u;
        out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) +
              "\n" + std::to_string(maxval) + "\n";
        for (Eigen::Index i = 0; i < rows * cols; ++i) {
            const double clamped = std::clamp(grid.data()[i], 0.0, 1.0);
            const unsigned v = unsigned(clamped * maxval + 0.5);
            if (maxval > 255) out.push_back(char((v >> 8) & 0xff));
            out.push_back(char(v & 0xff));
        }
    }
    store_file(path, out);
}

namespace {

template <typename T>
void emit(std::string& out, const char* key, const std::optional<T>& v) {
    if (!v) return;
    out += key;
    out += '=';
    if constexpr (std::is_same_v<T, double>)
        out += format_double(*v);
    else if constexpr (std::is_same_v<T, std::string>)
        out += *v;
    else
        out += std::to_string(*v);
    out += '\n';
}

}  // namespace

std::string serialize_meta(const ExperimentMeta& m) {
    std::string out;
    emit(out, "band", m.band);
    emit(out, "psf_sigma", m.psf_sigma);
    emit(out, "decim_r", m.decim_r);
    emit(out, "decim_c", m.decim_c);
    emit(out, "noise_sigma", m.noise_sigma);
    emit(out, "seed", m.seed);
    emit(out, "epsilon", m.epsilon);
    emit(out, "grid_lo", m.grid_lo);
    emit(out, "grid_hi", m.grid_hi);
    emit(out, "grid_count", m.grid_count);
    emit(out, "mu_star", m.mu_star);
    emit(out, "tau_star", m.tau_star);
    emit(out, "strategy", m.strategy);
    return out;
}

namespace {

// Calls fn(key, value) per line; malformed lines name their byte offset.
template <typename Fn>
void scan_meta_lines(const std::string& text, Fn&& fn) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        if (!line.empty()) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos || eq == 0)
                throw MalformedHeader("expected key=value at byte " +
                                      std::to_string(pos));
            fn(line.substr(0, eq), line.substr(eq + 1), pos);
        }
        pos = eol + 1;
    }
}

int parse_int(const std::string& v, std::size_t at) {
    try {
        std::size_t used = 0;
        const int r = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw MalformedHeader("expected integer value at byte " +
                              std::to_string(at));
    }
}

std::uint64_t parse_u64(const std::string& v, std::size_t at) {
    try {
        std::size_t used = 0;
        const unsigned long long r = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw MalformedHeader("expected unsigned integer value at byte " +
                              std::to_string(at));
    }
}

double parse_double(const std::string& v, std::size_t at) {
    try {
        std::size_t used = 0;
        const double r = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw MalformedHeader("expected real value at byte " +
                              std::to_string(at));
    }
}

}  // namespace

ExperimentMeta parse_meta(const std::string& text) {
    ExperimentMeta m;
    scan_meta_lines(text, [&](const std::string& key, const std::string& val,
                              std::size_t at) {
        if (key == "band") m.band = parse_int(val, at);
        else if (key == "psf_sigma") m.psf_sigma = parse_double(val, at);
        else if (key == "decim_r") m.decim_r = parse_int(val, at);
        else if (key == "decim_c") m.decim_c = parse_int(val, at);
        else if (key == "noise_sigma") m.noise_sigma = parse_double(val, at);
        else if (key == "seed") m.seed = parse_u64(val, at);
        else if (key == "epsilon") m.epsilon = parse_double(val, at);
        else if (key == "grid_lo") m.grid_lo = parse_double(val, at);
        else if (key == "grid_hi") m.grid_hi = parse_double(val, at);
        else if (key == "grid_count") m.grid_count = parse_int(val, at);
        else if (key == "mu_star") m.mu_star = parse_double(val, at);
        else if (key == "tau_star") m.tau_star = parse_double(val, at);
        else if (key == "strategy") m.strategy = val;
        else
            throw MalformedHeader("unknown key '" + key + "' at byte " +
                                  std::to_string(at));
    });
    return m;
}

SolveInputs parse_meta_sigma_free(const std::string& text) {
    SolveInputs s;
    scan_meta_lines(text, [&](const std::string& key, const std::string& val,
                              std::size_t at) {
        if (key == "band") s.band = parse_int(val, at);
        else if (key == "psf_sigma") s.psf_sigma = parse_double(val, at);
        else if (key == "decim_r") s.decim_r = parse_int(val, at);
        else if (key == "decim_c") s.decim_c = parse_int(val, at);
        // every other key, including noise_sigma, is deliberately dropped
    });
    return s;
}

void write_meta(const ExperimentMeta& meta,
                const std::filesystem::path& path) {
    store_file(path, serialize_meta(meta));
}

ExperimentMeta read_meta(const std::filesystem::path& path) {
    return parse_meta(load_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
    return load_file(path);
}

namespace {

void write_curve_impl(const WhitenessCurve& curve, const CurveMetrics* metrics,
                      const std::filesystem::path& path) {
    if (metrics &&
        (metrics->psnr.size() != curve.points.size() ||
         metrics->isnr.size() != curve.points.size() ||
         metrics->ssim.size() != curve.points.size()))
        throw ShapeMismatch("write_curve: metric columns do not match curve");
    std::string out = metrics ? "mu,tau,W,psnr,isnr,ssim\n" : "mu,tau,W\n";
    for (std::size_t k = 0; k < curve.points.size(); ++k) {
        const auto& p = curve.points[k];
        out += format_double(p.mu);
        out += ',';
        out += format_double(p.tau);
        out += ',';
        out += format_double(p.value);
        if (metrics) {
            out += ',';
            out += format_double(metrics->psnr[k]);
            out += ',';
            out += format_double(metrics->isnr[k]);
            out += ',';
            out += format_double(metrics->ssim[k]);
        }
        out += '\n';
    }
    store_file(path, out);
}

}  // namespace

void write_curve(const WhitenessCurve& curve,
                 const std::filesystem::path& path) {
    write_curve_impl(curve, nullptr, path);
}

void write_curve(const WhitenessCurve& curve, const CurveMetrics& metrics,
                 const std::filesystem::path& path) {
    write_curve_impl(curve, &metrics, path);
}

}  // namespace supres
