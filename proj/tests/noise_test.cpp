#include <doctest.h>

#include <cmath>

#include "ptv/errors.hpp"
#include "ptv/noise.hpp"

using ptv::Image;

namespace {

struct Moments {
    double mean;
    double var;
};

Moments moments(const Image& img) {
    double sum = 0.0;
    for (double v : img.pixels()) sum += v;
    const double mean = sum / static_cast<double>(img.size());
    double ss = 0.0;
    for (double v : img.pixels()) ss += (v - mean) * (v - mean);
    return {mean, ss / static_cast<double>(img.size() - 1)};
}

}  // namespace

TEST_CASE("zero mean stays zero") {
    Image img(16, 16, 0.0);
    img(3, 3) = 50.0;
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        const Image noisy = ptv::add_poisson_noise(img, {seed});
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j)
                if (!(i == 3 && j == 3)) REQUIRE(noisy(i, j) == 0.0);
    }
}

TEST_CASE("constant lambda 100 matches Poisson mean and variance") {
    const Image img(256, 256, 100.0);
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const Moments m = moments(ptv::add_poisson_noise(img, {seed}));
        CHECK(std::fabs(m.mean - 100.0) <= 3.0 * 10.0 / 256.0);
        CHECK(std::fabs(m.var - 100.0) <= 15.0);
    }
}

TEST_CASE("inversion branch reproduces the Poisson pmf") {
    // lambda = 2: P(0) = e^-2, P(1) = 2 e^-2. 4-sigma binomial bounds.
    const Image img(256, 256, 2.0);
    const Image noisy = ptv::add_poisson_noise(img, {5});
    const double n = static_cast<double>(img.size());
    double zeros = 0, ones = 0;
    for (double v : noisy.pixels()) {
        CHECK(v == std::floor(v));
        zeros += v == 0.0;
        ones += v == 1.0;
    }
    const double p0 = std::exp(-2.0), p1 = 2.0 * std::exp(-2.0);
    CHECK(std::fabs(zeros / n - p0) <= 4.0 * std::sqrt(p0 * (1 - p0) / n));
    CHECK(std::fabs(ones / n - p1) <= 4.0 * std::sqrt(p1 * (1 - p1) / n));
}

TEST_CASE("deterministic for a seed and independent of thread count") {
    Image img(97, 61);
    for (std::size_t i = 0; i < img.size(); ++i) img.pixels()[i] = static_cast<double>(i % 256);
    const Image a = ptv::add_poisson_noise(img, {42});
    CHECK(a == ptv::add_poisson_noise(img, {42}));
    CHECK(a == ptv::add_poisson_noise(img, {42}, 4));
    CHECK(a == ptv::add_poisson_noise(img, {42}, 7));
    CHECK_FALSE(a == ptv::add_poisson_noise(img, {43}));
}

TEST_CASE("negative or non-finite means are rejected") {
    Image img(4, 4, 10.0);
    img(1, 2) = -0.5;
    CHECK_THROWS_AS(ptv::add_poisson_noise(img, {0}), ptv::DomainError);
    img(1, 2) = NAN;
    CHECK_THROWS_AS(ptv::add_poisson_noise(img, {0}), ptv::DomainError);
}

TEST_CASE("uniform stream stays in [0, 1)") {
    ptv::PixelRng rng(7, 3);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(lo < 1e-3);
    CHECK(hi > 1.0 - 1e-3);
}
