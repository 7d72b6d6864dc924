#include "ptv/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "ptv/errors.hpp"

namespace ptv {

namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::vector<unsigned char> slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path.string());
    }
    return bytes;
}

// Cursor over a PGM byte buffer. Header tokens are separated by whitespace
// and '#' starts a comment that runs to end of line.
class PgmCursor {
public:
    PgmCursor(const std::vector<unsigned char>& bytes, const fs::path& path) : bytes_(bytes), path_(path) {}

    std::string token() {
        skip_space_and_comments();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
            out.push_back(static_cast<char>(bytes_[pos_++]));
        }
        if (out.empty()) {
            fail("unexpected end of data");
        }
        return out;
    }

    long integer(const char* what) {
        const std::string tok = token();
        if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }) ||
            tok.size() > 9) {
            fail(std::string("bad ") + what + " '" + tok + "'");
        }
        return std::stol(tok);
    }

    // P5: exactly one whitespace byte separates maxval from the raster.
    void single_whitespace() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            fail("missing separator before raster");
        }
        ++pos_;
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }
    const unsigned char* data() const { return bytes_.data() + pos_; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError(path_.string() + ": " + msg);
    }

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
    const fs::path& path_;
    std::size_t pos_ = 0;
};

Image read_pgm(const std::vector<unsigned char>& bytes, const fs::path& path) {
    PgmCursor cur(bytes, path);
    const std::string magic = cur.token();
    if (magic != "P2" && magic != "P5") {
        cur.fail("not a grayscale PGM (magic '" + magic + "')");
    }
    const long width = cur.integer("width");
    const long height = cur.integer("height");
    const long maxval = cur.integer("maxval");
    if (width < Image::kMinSide || height < Image::kMinSide) {
        cur.fail("image must be at least 2x2");
    }
    if (maxval != 255) {
        cur.fail("unsupported maxval " + std::to_string(maxval) + " (only 8-bit, maxval 255)");
    }

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> data(count);
    if (magic == "P5") {
        cur.single_whitespace();
        if (cur.remaining() < count) {
            cur.fail("truncated raster");
        }
        std::copy_n(cur.data(), count, data.begin());
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = cur.integer("sample");
            if (v > maxval) {
                cur.fail("sample exceeds maxval");
            }
            data[i] = static_cast<double>(v);
        }
    }
    return Image(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

Image read_png(const fs::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw FormatError(path.string() + ": " + msg);
    }
    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    const bool alpha = (png.format & PNG_FORMAT_FLAG_ALPHA) != 0;
    const bool deep = (png.format & PNG_FORMAT_FLAG_LINEAR) != 0;
    if (color || alpha || deep) {
        png_image_free(&png);
        throw FormatError(path.string() + ": only 8-bit grayscale PNG without alpha is supported");
    }
    if (png.width < Image::kMinSide || png.height < Image::kMinSide) {
        png_image_free(&png);
        throw FormatError(path.string() + ": image must be at least 2x2");
    }
    png.format = PNG_FORMAT_GRAY;
    std::vector<unsigned char> raster(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, raster.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw FormatError(path.string() + ": " + msg);
    }
    std::vector<double> data(raster.begin(), raster.end());
    return Image(static_cast<int>(png.width), static_cast<int>(png.height), std::move(data));
}

std::vector<unsigned char> quantize(const Image& img) {
    std::vector<unsigned char> out(img.size());
    std::transform(img.pixels().begin(), img.pixels().end(), out.begin(), quantize_pixel);
    return out;
}

}  // namespace

unsigned char quantize_pixel(double value) noexcept {
    if (!(value > 0.0)) {
        return 0;
    }
    if (value >= 255.0) {
        return 255;
    }
    return static_cast<unsigned char>(std::floor(value + 0.5));
}

Image read_image(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw IoError("no such file: " + path.string());
    }
    const std::vector<unsigned char> head = slurp(path);
    static constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (head.size() >= 8 && std::equal(std::begin(kPngSignature), std::end(kPngSignature), head.begin())) {
        return read_png(path);
    }
    return read_pgm(head, path);
}

void write_image(const Image& img, const fs::path& path) {
    const std::string ext = lower_extension(path);
    const std::vector<unsigned char> raster = quantize(img);
    if (ext == ".png") {
        png_image png{};
        png.version = PNG_IMAGE_VERSION;
        png.width = static_cast<png_uint_32>(img.width());
        png.height = static_cast<png_uint_32>(img.height());
        png.format = PNG_FORMAT_GRAY;
        if (!png_image_write_to_file(&png, path.c_str(), 0, raster.data(), 0, nullptr)) {
            const std::string msg = png.message;
            png_image_free(&png);
            throw IoError("cannot write " + path.string() + ": " + msg);
        }
        return;
    }
    if (ext != ".pgm") {
        throw IoError("unsupported output extension '" + ext + "' (use .pgm or .png)");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    out.flush();
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace ptv
