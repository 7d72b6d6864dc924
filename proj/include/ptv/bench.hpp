#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptv/solver.hpp"

namespace ptv {

inline constexpr const char* kBenchCsvHeader = "id,width,height,scheme,psnr_db,ssim,iterations,time_ms";
inline constexpr const char* kAverageRowId = "Average";

/// One manifest line that names an image.
struct ManifestEntry {
    std::size_t line_index;  // 0-based line number in the manifest file
    std::filesystem::path path;
};

/// Paths are one per line; blank lines and lines starting with '#' are
/// skipped but still count toward the line index. Relative paths resolve
/// against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest);

/// Empty optionals render as empty CSV fields.
struct BenchRow {
    std::string id;
    std::optional<int> width;
    std::optional<int> height;
    std::string scheme;
    std::optional<double> psnr_db;
    std::optional<double> ssim;
    std::optional<double> iterations;
    std::optional<double> time_ms;

    bool succeeded() const noexcept { return psnr_db.has_value(); }
};

struct BenchConfig {
    std::uint64_t seed = 0;
    std::vector<Scheme> schemes{Scheme::semi_implicit, Scheme::explicit_euler};
};

/// Corrupts each image with seed + line index, quantizes the noisy image to
/// 8 bits, denoises with each scheme's default parameters, and scores the
/// result against the clean image. Rows follow manifest order, schemes
/// inner; one average row per scheme is appended. Failures are reported on
/// `err` and leave the metric fields of their row empty.
std::vector<BenchRow> run_bench(const std::vector<ManifestEntry>& entries, const BenchConfig& config,
                                std::ostream& err);

/// Fixed-point rendering with 10 decimals; infinities render as `inf`.
std::string format_real(double value);

std::string format_bench_csv(const std::vector<BenchRow>& rows);

}  // namespace ptv
