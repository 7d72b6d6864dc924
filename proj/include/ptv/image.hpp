#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ptv {

/// Row-major grayscale intensity grid. Values are gray levels, nominally in
/// [0, 255], stored as doubles so that noisy and restored images are never
/// quantized in memory.
class Image {
public:
    static constexpr int kMinSide = 2;

    Image(int width, int height, double fill = 0.0);
    Image(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(int row, int col) const noexcept { return data_[index(row, col)]; }
    double& operator()(int row, int col) noexcept { return data_[index(row, col)]; }

    /// Neumann (ghost-cell replication) access: out-of-range indices clamp to
    /// the nearest valid pixel.
    double clamped(int row, int col) const noexcept;

    std::span<const double> pixels() const& noexcept { return data_; }
    std::span<double> pixels() & noexcept { return data_; }
    // A span into a temporary would dangle.
    std::span<const double> pixels() const&& = delete;

    bool same_shape(const Image& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    double min() const noexcept;
    double max() const noexcept;
    bool all_finite() const noexcept;

    bool operator==(const Image&) const = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    int width_;
    int height_;
    std::vector<double> data_;
};

/// Throws ShapeError naming `what` when the two images differ in size.
void require_same_shape(const Image& a, const Image& b, const char* what);

}  // namespace ptv
