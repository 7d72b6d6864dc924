#include "ptv/corpus.hpp"

#include <cmath>

#include "ptv/noise.hpp"

namespace ptv {

namespace {

template <class Fn>
Image render(int width, int height, Fn&& value_at) {
    Image img(width, height);
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            img(i, j) = value_at(static_cast<double>(i), static_cast<double>(j));
        }
    }
    return img;
}

bool in_disc(double i, double j, double ci, double cj, double r) {
    return (i - ci) * (i - ci) + (j - cj) * (j - cj) <= r * r;
}

}  // namespace

Image random_piecewise_constant(int width, int height, std::uint64_t seed, int regions, double low,
                                double high) {
    PixelRng rng(seed, 0xC0FFEEULL);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_uniform(); };

    Image img(width, height, uniform(low, high));
    for (int r = 0; r < regions; ++r) {
        const double level = uniform(low, high);
        const bool disc = rng.next_uniform() < 0.5;
        const double ci = uniform(0.0, height);
        const double cj = uniform(0.0, width);
        const double si = uniform(0.1, 0.4) * height;
        const double sj = uniform(0.1, 0.4) * width;
        for (int i = 0; i < height; ++i) {
            for (int j = 0; j < width; ++j) {
                const bool inside = disc ? in_disc(i, j, ci, cj, 0.5 * (si + sj) * 0.6)
                                         : std::fabs(i - ci) <= 0.5 * si && std::fabs(j - cj) <= 0.5 * sj;
                if (inside) {
                    img(i, j) = level;
                }
            }
        }
    }
    return img;
}

std::vector<NamedImage> synthetic_corpus() {
    std::vector<NamedImage> out;

    out.push_back({"disc", render(128, 128, [](double i, double j) {
        return in_disc(i, j, 64, 64, 36) ? 200.0 : 40.0;
    })});

    out.push_back({"rectangles", render(128, 112, [](double i, double j) {
        if (i >= 16 && i < 56 && j >= 12 && j < 70) return 180.0;
        if (i >= 50 && i < 100 && j >= 60 && j < 116) return 90.0;
        return 30.0;
    })});

    out.push_back({"hramp", render(128, 128, [](double, double j) { return 20.0 + 215.0 * j / 127.0; })});

    out.push_back({"dramp", render(120, 128, [](double i, double j) {
        return 15.0 + 220.0 * (i + j) / (127.0 + 119.0);
    })});

    out.push_back({"bars", render(128, 128, [](double, double j) {
        static constexpr double levels[] = {25.0, 120.0, 60.0, 220.0, 160.0, 90.0, 240.0, 45.0};
        return levels[static_cast<int>(j) / 16];
    })});

    out.push_back({"checker", render(128, 128, [](double i, double j) {
        const int cell = (static_cast<int>(i) / 32 + static_cast<int>(j) / 32) % 2;
        return cell ? 170.0 : 70.0;
    })});

    out.push_back({"rings", render(128, 128, [](double i, double j) {
        const double r = std::hypot(i - 63.5, j - 63.5);
        return (static_cast<int>(r) / 12) % 2 ? 210.0 : 80.0;
    })});

    out.push_back({"ramp_shapes", render(136, 128, [](double i, double j) {
        if (in_disc(i, j, 40, 40, 22)) return 230.0;
        if (i >= 70 && i < 110 && j >= 70 && j < 125) return 35.0;
        return 60.0 + 120.0 * j / 135.0;
    })});

    out.push_back({"random_shapes", random_piecewise_constant(128, 128, 7, 8, 10.0, 245.0)});

    out.push_back({"blob", render(128, 128, [](double i, double j) {
        const double r2 = (i - 64.0) * (i - 64.0) + (j - 64.0) * (j - 64.0);
        return 30.0 + 190.0 * std::exp(-r2 / (2.0 * 28.0 * 28.0));
    })});

    return out;
}

}  // namespace ptv
