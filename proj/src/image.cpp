#include "ptv/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptv/errors.hpp"

namespace ptv {

namespace {

void check_dims(int width, int height) {
    if (width < Image::kMinSide || height < Image::kMinSide) {
        throw ShapeError("image must be at least 2x2, got " + std::to_string(width) + "x" +
                         std::to_string(height));
    }
}

}  // namespace

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Image::Image(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw ShapeError("pixel count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(width) + "x" + std::to_string(height));
    }
}

double Image::clamped(int row, int col) const noexcept {
    row = std::clamp(row, 0, height_ - 1);
    col = std::clamp(col, 0, width_ - 1);
    return data_[index(row, col)];
}

double Image::min() const noexcept { return *std::min_element(data_.begin(), data_.end()); }

double Image::max() const noexcept { return *std::max_element(data_.begin(), data_.end()); }

bool Image::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeError(std::string(what) + ": size mismatch " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
    }
}

}  // namespace ptv
