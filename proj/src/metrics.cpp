#include "ptv/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ptv/errors.hpp"

namespace ptv {

namespace {

using Kernel = std::array<double, kSsimWindow>;

Kernel gaussian_kernel() {
    Kernel k{};
    double sum = 0.0;
    const int half = kSsimWindow / 2;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double d = static_cast<double>(i - half);
        k[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
        sum += k[i];
    }
    for (double& v : k) {
        v /= sum;
    }
    return k;
}

// Valid-mode separable filtering of `src` (w x h) into (w-10) x (h-10).
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h, const Kernel& k) {
    const int ow = w - kSsimWindow + 1;
    const int oh = h - kSsimWindow + 1;
    std::vector<double> rows(static_cast<std::size_t>(ow) * h);
    for (int i = 0; i < h; ++i) {
        const double* line = src.data() + static_cast<std::size_t>(i) * w;
        for (int j = 0; j < ow; ++j) {
            double acc = 0.0;
            for (int t = 0; t < kSsimWindow; ++t) {
                acc += k[t] * line[j + t];
            }
            rows[static_cast<std::size_t>(i) * ow + j] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int i = 0; i < oh; ++i) {
        for (int j = 0; j < ow; ++j) {
            double acc = 0.0;
            for (int t = 0; t < kSsimWindow; ++t) {
                acc += k[t] * rows[static_cast<std::size_t>(i + t) * ow + j];
            }
            out[static_cast<std::size_t>(i) * ow + j] = acc;
        }
    }
    return out;
}

}  // namespace

double psnr(const Image& a, const Image& b) {
    require_same_shape(a, b, "psnr");
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    double sse = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const double d = pa[i] - pb[i];
        sse += d * d;
    }
    const double mse = sse / static_cast<double>(pa.size());
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(kPeakValue * kPeakValue / mse);
}

double ssim(const Image& a, const Image& b) {
    require_same_shape(a, b, "ssim");
    const int w = a.width();
    const int h = a.height();
    if (w < kSsimWindow || h < kSsimWindow) {
        throw DomainError("ssim needs images of at least 11x11");
    }

    const std::vector<double> va(a.pixels().begin(), a.pixels().end());
    const std::vector<double> vb(b.pixels().begin(), b.pixels().end());
    std::vector<double> aa(va.size()), bb(va.size()), ab(va.size());
    for (std::size_t i = 0; i < va.size(); ++i) {
        aa[i] = va[i] * va[i];
        bb[i] = vb[i] * vb[i];
        ab[i] = va[i] * vb[i];
    }

    const Kernel k = gaussian_kernel();
    const auto mu_a = filter_valid(va, w, h, k);
    const auto mu_b = filter_valid(vb, w, h, k);
    const auto e_aa = filter_valid(aa, w, h, k);
    const auto e_bb = filter_valid(bb, w, h, k);
    const auto e_ab = filter_valid(ab, w, h, k);

    const double c1 = (kSsimK1 * kPeakValue) * (kSsimK1 * kPeakValue);
    const double c2 = (kSsimK2 * kPeakValue) * (kSsimK2 * kPeakValue);
    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i];
        const double mb = mu_b[i];
        const double var_a = e_aa[i] - ma * ma;
        const double var_b = e_bb[i] - mb * mb;
        const double cov = e_ab[i] - ma * mb;
        sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
    }
    return sum / static_cast<double>(mu_a.size());
}

MetricReport compare(const Image& reference, const Image& test) {
    return {psnr(reference, test), ssim(reference, test)};
}

}  // namespace ptv
