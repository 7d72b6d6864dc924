#pragma once

#include <cstdint>

#include "ptv/image.hpp"

namespace ptv {

enum class NoiseModel { poisson_per_pixel };

struct NoiseSpec {
    std::uint64_t seed = 0;
    NoiseModel model = NoiseModel::poisson_per_pixel;
};

/// SplitMix64 stream keyed by (seed, pixel index). Every pixel owns an
/// independent stream, so noise output does not depend on evaluation order.
class PixelRng {
public:
    PixelRng(std::uint64_t seed, std::uint64_t index) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 bits of resolution.
    double next_uniform() noexcept;

private:
    std::uint64_t state_;
};

/// Draws one Poisson(lambda) variate. Sequential-search inversion below
/// lambda = 30, Hoermann's transformed rejection (PTRS) at and above.
/// Requires lambda >= 0 and finite.
std::uint64_t sample_poisson(double lambda, PixelRng& rng);

/// Replaces every pixel by an independent Poisson sample whose mean is the
/// pixel's intensity. Output is a pure function of (img, spec.seed) for any
/// thread count. Throws DomainError on negative or non-finite pixels.
Image add_poisson_noise(const Image& img, const NoiseSpec& spec, unsigned threads = 1);

}  // namespace ptv
