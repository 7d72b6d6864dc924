#pragma once

#include "ptv/image.hpp"

namespace ptv {

inline constexpr double kPeakValue = 255.0;
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

struct MetricReport {
    double psnr;  // dB, +inf for identical images
    double ssim;
};

/// 10 log10(255^2 / MSE); +infinity when MSE is zero.
double psnr(const Image& a, const Image& b);

/// Mean SSIM over every valid 11x11 placement of a Gaussian (sigma 1.5)
/// window. Throws DomainError if either side is shorter than the window.
double ssim(const Image& a, const Image& b);

MetricReport compare(const Image& reference, const Image& test);

}  // namespace ptv
