#include "edgefuse/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>

namespace edgefuse {

namespace {

struct Raster {
    int rows = 0;
    int cols = 0;
    int channels = 1;
    int maxval = 255;
    bool bitmap = false;  // PBM: sample 1 means black / set
    std::vector<std::uint16_t> samples;
};

std::runtime_error io_error(const std::filesystem::path& path, const std::string& what) {
    return std::runtime_error("'" + path.string() + "': " + what);
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error(path, "cannot open for reading");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PnmCursor {
public:
    PnmCursor(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
        : bytes_(bytes), path_(path) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw io_error(path_, "malformed PNM header");
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_++] - '0');
            if (value > 1'000'000'000L) {
                throw io_error(path_, "PNM value out of range");
            }
        }
        return static_cast<int>(value);
    }

    // ASCII bitmaps may pack digits without separators.
    int next_bit() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || (bytes_[pos_] != '0' && bytes_[pos_] != '1')) {
            throw io_error(path_, "malformed PBM data");
        }
        return bytes_[pos_++] - '0';
    }

    // Exactly one whitespace byte separates the header from binary data.
    void skip_single_space() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw io_error(path_, "malformed PNM header");
        }
        ++pos_;
    }

    unsigned char next_byte() {
        if (pos_ >= bytes_.size()) {
            throw io_error(path_, "truncated PNM data");
        }
        return bytes_[pos_++];
    }

    void seek(std::size_t pos) { pos_ = pos; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    const std::filesystem::path& path_;
    std::size_t pos_ = 0;
};

Raster decode_pnm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
    const char kind = static_cast<char>(bytes[1]);
    PnmCursor cur(bytes, path);
    cur.seek(2);
    Raster out;
    out.cols = cur.next_int();
    out.rows = cur.next_int();
    if (out.rows <= 0 || out.cols <= 0) {
        throw io_error(path, "image has no pixels");
    }
    out.bitmap = (kind == '1' || kind == '4');
    out.channels = (kind == '3' || kind == '6') ? 3 : 1;
    out.maxval = out.bitmap ? 1 : cur.next_int();
    if (out.maxval <= 0 || out.maxval > 65535) {
        throw io_error(path, "invalid PNM maxval");
    }
    const std::size_t count =
        static_cast<std::size_t>(out.rows) * static_cast<std::size_t>(out.cols) * static_cast<std::size_t>(out.channels);
    out.samples.resize(count);

    switch (kind) {
        case '1':
            for (auto& s : out.samples) {
                s = static_cast<std::uint16_t>(cur.next_bit());
            }
            break;
        case '2':
        case '3':
            for (auto& s : out.samples) {
                s = static_cast<std::uint16_t>(std::min(cur.next_int(), out.maxval));
            }
            break;
        case '4': {
            cur.skip_single_space();
            for (int r = 0; r < out.rows; ++r) {
                unsigned char byte = 0;
                for (int c = 0; c < out.cols; ++c) {
                    if (c % 8 == 0) {
                        byte = cur.next_byte();
                    }
                    out.samples[static_cast<std::size_t>(r) * static_cast<std::size_t>(out.cols) +
                                static_cast<std::size_t>(c)] = static_cast<std::uint16_t>((byte >> (7 - c % 8)) & 1u);
                }
            }
            break;
        }
        case '5':
        case '6': {
            cur.skip_single_space();
            const bool wide = out.maxval > 255;
            for (auto& s : out.samples) {
                std::uint16_t v = cur.next_byte();
                if (wide) {
                    v = static_cast<std::uint16_t>((v << 8) | cur.next_byte());
                }
                s = std::min<std::uint16_t>(v, static_cast<std::uint16_t>(out.maxval));
            }
            break;
        }
        default:
            throw io_error(path, "unsupported PNM variant");
    }
    return out;
}

Raster decode_png(const std::filesystem::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_file(&image, path.c_str()) == 0) {
        throw io_error(path, std::string("PNG decode failed: ") + image.message);
    }
    const bool colour = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    Raster out;
    out.rows = static_cast<int>(image.height);
    out.cols = static_cast<int>(image.width);
    out.channels = colour ? 3 : 1;
    out.maxval = 255;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
        const std::string message = image.message;
        png_image_free(&image);
        throw io_error(path, "PNG decode failed: " + message);
    }
    out.samples.assign(buffer.begin(), buffer.end());
    return out;
}

Raster decode(const std::filesystem::path& path) {
    const auto bytes = slurp(path);
    static constexpr std::array<unsigned char, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= kPngSignature.size() && std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
        return decode_png(path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '6') {
        return decode_pnm(bytes, path);
    }
    throw io_error(path, "unrecognized image format (expected PNG or PNM)");
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext;
}

void write_png(const std::filesystem::path& path, int rows, int cols, int bit_depth,
               const std::vector<std::vector<png_byte>>& scanlines) {
    std::vector<png_bytep> row_pointers;
    row_pointers.reserve(scanlines.size());
    for (const auto& line : scanlines) {
        row_pointers.push_back(const_cast<png_bytep>(line.data()));
    }
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (fp == nullptr) {
        throw io_error(path, "cannot open for writing");
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (png == nullptr || info == nullptr) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw io_error(path, "PNG encoder initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw io_error(path, "PNG encoding failed");
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows), bit_depth,
                 PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, row_pointers.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0) {
        throw io_error(path, "write failed");
    }
}

void write_bytes(const std::filesystem::path& path, const std::string& header, const std::vector<char>& payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error(path, "cannot open for writing");
    }
    out << header;
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) {
        throw io_error(path, "write failed");
    }
}

std::uint8_t quantize(double v) { return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))); }

}  // namespace

GrayImage read_gray_image(const std::filesystem::path& path) {
    const Raster raster = decode(path);
    GrayImage out(raster.rows, raster.cols);
    const double maxval = raster.maxval;
    for (int r = 0; r < raster.rows; ++r) {
        for (int c = 0; c < raster.cols; ++c) {
            const std::size_t base =
                (static_cast<std::size_t>(r) * static_cast<std::size_t>(raster.cols) + static_cast<std::size_t>(c)) *
                static_cast<std::size_t>(raster.channels);
            double v = 0.0;
            if (raster.channels == 3) {
                v = (0.299 * raster.samples[base] + 0.587 * raster.samples[base + 1] +
                     0.114 * raster.samples[base + 2]) /
                    maxval;
            } else if (raster.bitmap) {
                v = raster.samples[base] != 0 ? 0.0 : 1.0;
            } else {
                v = raster.samples[base] / maxval;
            }
            out(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

EdgeMap read_edge_map(const std::filesystem::path& path) {
    const Raster raster = decode(path);
    EdgeMap out(raster.rows, raster.cols, 0);
    for (int r = 0; r < raster.rows; ++r) {
        for (int c = 0; c < raster.cols; ++c) {
            const std::size_t base =
                (static_cast<std::size_t>(r) * static_cast<std::size_t>(raster.cols) + static_cast<std::size_t>(c)) *
                static_cast<std::size_t>(raster.channels);
            bool set = false;
            for (int k = 0; k < raster.channels; ++k) {
                set = set || raster.samples[base + static_cast<std::size_t>(k)] != 0;
            }
            out(r, c) = set ? 1 : 0;
        }
    }
    return out;
}

void write_gray_image(const std::filesystem::path& path, const GrayImage& img) {
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        std::vector<std::vector<png_byte>> lines(static_cast<std::size_t>(img.rows()));
        for (int r = 0; r < img.rows(); ++r) {
            auto& line = lines[static_cast<std::size_t>(r)];
            line.resize(static_cast<std::size_t>(img.cols()));
            for (int c = 0; c < img.cols(); ++c) {
                line[static_cast<std::size_t>(c)] = quantize(img(r, c));
            }
        }
        write_png(path, img.rows(), img.cols(), 8, lines);
    } else if (ext == ".pgm") {
        std::vector<char> payload;
        payload.reserve(img.size());
        for (double v : img.pixels()) {
            payload.push_back(static_cast<char>(quantize(v)));
        }
        write_bytes(path, "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n255\n", payload);
    } else {
        throw io_error(path, "unsupported output extension (use .png or .pgm)");
    }
}

void write_edge_map(const std::filesystem::path& path, const EdgeMap& edges) {
    const std::string ext = lower_extension(path);
    const auto packed_width = static_cast<std::size_t>((edges.cols() + 7) / 8);
    std::vector<std::vector<png_byte>> lines(static_cast<std::size_t>(edges.rows()),
                                             std::vector<png_byte>(packed_width, 0));
    for (int r = 0; r < edges.rows(); ++r) {
        for (int c = 0; c < edges.cols(); ++c) {
            if (edges(r, c) != 0) {
                lines[static_cast<std::size_t>(r)][static_cast<std::size_t>(c / 8)] |=
                    static_cast<png_byte>(0x80u >> (c % 8));
            }
        }
    }
    if (ext == ".png") {
        write_png(path, edges.rows(), edges.cols(), 1, lines);
    } else if (ext == ".pbm") {
        std::vector<char> payload;
        for (const auto& line : lines) {
            payload.insert(payload.end(), line.begin(), line.end());
        }
        write_bytes(path, "P4\n" + std::to_string(edges.cols()) + " " + std::to_string(edges.rows()) + "\n", payload);
    } else {
        throw io_error(path, "unsupported output extension (use .png or .pbm)");
    }
}

void write_raw_f64(const std::filesystem::path& path, std::span<const double> values) {
    std::vector<char> payload;
    payload.reserve(values.size() * 8);
    for (double v : values) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            payload.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
        }
    }
    write_bytes(path, "", payload);
}

std::vector<double> read_raw_f64(const std::filesystem::path& path, std::size_t count) {
    const auto bytes = slurp(path);
    if (bytes.size() != count * 8) {
        throw io_error(path, "expected " + std::to_string(count * 8) + " bytes, found " + std::to_string(bytes.size()));
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 7; b >= 0; --b) {
            bits = (bits << 8) | bytes[i * 8 + static_cast<std::size_t>(b)];
        }
        out[i] = std::bit_cast<double>(bits);
    }
    return out;
}

void write_raw_gray(const std::filesystem::path& path, const GrayImage& img) { write_raw_f64(path, img.pixels()); }

GrayImage read_raw_gray(const std::filesystem::path& path, int rows, int cols) {
    if (rows <= 0 || cols <= 0) {
        throw io_error(path, "raw image dimensions must be positive");
    }
    auto values = read_raw_f64(path, static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    try {
        return GrayImage(rows, cols, std::move(values));
    } catch (const std::exception& e) {
        throw io_error(path, e.what());
    }
}

bool is_supported_image(const std::filesystem::path& path) {
    const std::string ext = lower_extension(path);
    return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pbm" || ext == ".pnm";
}

}  // namespace edgefuse
