#include "ptv/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "ptv/errors.hpp"

namespace ptv {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr double kInversionLimit = 30.0;

std::uint64_t poisson_inversion(double lambda, PixelRng& rng) {
    double p = std::exp(-lambda);
    double cdf = p;
    const double u = rng.next_uniform();
    std::uint64_t k = 0;
    // The tail mass past k ~ lambda + 40 sqrt(lambda) is below double
    // resolution; the cap only guards against u landing in rounding slack.
    const auto cap = static_cast<std::uint64_t>(lambda + 40.0 * std::sqrt(lambda) + 40.0);
    while (u > cdf && k < cap) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

// W. Hoermann, "The transformed rejection method for generating Poisson
// random variables", Insurance: Mathematics and Economics 12 (1993).
std::uint64_t poisson_ptrs(double lambda, PixelRng& rng) {
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.next_uniform() - 0.5;
        const double v = rng.next_uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -lambda + k * loglam - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

}  // namespace

PixelRng::PixelRng(std::uint64_t seed, std::uint64_t index) noexcept
    : state_(mix64(seed + kGolden) ^ mix64(index * kGolden + 0x632BE59BD9B4E019ULL)) {}

std::uint64_t PixelRng::next_u64() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double PixelRng::next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t sample_poisson(double lambda, PixelRng& rng) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("Poisson mean must be finite and >= 0, got " + std::to_string(lambda));
    }
    if (lambda == 0.0) {
        return 0;
    }
    return lambda < kInversionLimit ? poisson_inversion(lambda, rng) : poisson_ptrs(lambda, rng);
}

Image add_poisson_noise(const Image& img, const NoiseSpec& spec, unsigned threads) {
    const auto src = img.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!(src[i] >= 0.0) || !std::isfinite(src[i])) {
            throw DomainError("Poisson noise needs finite pixels >= 0; pixel " + std::to_string(i) +
                              " is " + std::to_string(src[i]));
        }
    }

    Image out(img.width(), img.height());
    auto dst = out.pixels();
    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PixelRng rng(spec.seed, i);
            dst[i] = static_cast<double>(sample_poisson(src[i], rng));
        }
    };

    threads = std::clamp(threads, 1u, 64u);
    if (threads == 1) {
        fill(0, src.size());
        return out;
    }
    {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (src.size() + threads - 1) / threads;
        for (std::size_t begin = 0; begin < src.size(); begin += chunk) {
            workers.emplace_back(fill, begin, std::min(src.size(), begin + chunk));
        }
    }
    return out;
}

}  // namespace ptv
