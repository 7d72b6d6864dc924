#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptv/image.hpp"

namespace ptv {

struct NamedImage {
    std::string id;
    Image image;
};

/// Ten deterministic test images: piecewise-constant shapes, ramps, and
/// mixtures of both, with intensities kept in [10, 245].
std::vector<NamedImage> synthetic_corpus();

/// Random piecewise-constant image: a background plus `regions` random
/// axis-aligned rectangles and discs, levels drawn from [low, high].
Image random_piecewise_constant(int width, int height, std::uint64_t seed, int regions = 6,
                                double low = 5.0, double high = 250.0);

}  // namespace ptv
