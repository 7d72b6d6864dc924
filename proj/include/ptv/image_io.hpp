#pragma once

#include <filesystem>

#include "ptv/image.hpp"

namespace ptv {

/// Reads an 8-bit grayscale PGM (P2 or P5) or 8-bit grayscale PNG.
/// Throws IoError when the file cannot be opened and FormatError for any
/// other depth, colour type, or a corrupt header.
Image read_image(const std::filesystem::path& path);

/// Writes `img` as binary PGM (.pgm) or 8-bit gray PNG (.png). Values are
/// clamped to [0, 255] and rounded half-up before storage.
void write_image(const Image& img, const std::filesystem::path& path);

/// The storage transform applied by write_image, exposed for tests.
unsigned char quantize_pixel(double value) noexcept;

}  // namespace ptv
