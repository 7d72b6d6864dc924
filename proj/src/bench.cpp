#include "ptv/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ptv/errors.hpp"
#include "ptv/image_io.hpp"
#include "ptv/metrics.hpp"
#include "ptv/noise.hpp"

namespace ptv {

namespace fs = std::filesystem;

std::vector<ManifestEntry> read_manifest(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in) {
        throw IoError("cannot open manifest " + manifest.string());
    }
    const fs::path base = manifest.parent_path();
    std::vector<ManifestEntry> entries;
    std::string line;
    for (std::size_t index = 0; std::getline(in, line); ++index) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r");
        fs::path p(line.substr(first, last - first + 1));
        if (p.is_relative()) {
            p = base / p;
        }
        entries.push_back({index, std::move(p)});
    }
    return entries;
}

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", value);
    return buf;
}

namespace {

BenchRow score_one(const std::string& id, const Image& clean, const Image& noisy, Scheme scheme,
                   std::ostream& err) {
    BenchRow row{id, clean.width(), clean.height(), std::string(to_string(scheme)), {}, {}, {}, {}};
    try {
        const DenoiseResult result = denoise(noisy, SolverParams::defaults_for(scheme));
        if (result.termination == Termination::numerical_failure) {
            err << id << " [" << row.scheme << "]: " << result.diagnostic << '\n';
            return row;
        }
        const MetricReport m = compare(clean, result.image);
        row.psnr_db = m.psnr;
        row.ssim = m.ssim;
        row.iterations = result.iterations();
        row.time_ms = result.wall_time.count() * 1e3;
    } catch (const Error& e) {
        err << id << " [" << row.scheme << "]: " << e.what() << '\n';
    }
    return row;
}

std::optional<double> mean_of(const std::vector<const BenchRow*>& rows, std::optional<double> BenchRow::*field) {
    if (rows.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (const BenchRow* r : rows) {
        sum += *(r->*field);
    }
    return sum / static_cast<double>(rows.size());
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<ManifestEntry>& entries, const BenchConfig& config,
                                std::ostream& err) {
    std::vector<BenchRow> rows;
    for (const ManifestEntry& entry : entries) {
        const std::string id = entry.path.stem().string();
        std::optional<Image> clean;
        std::optional<Image> noisy;
        try {
            clean = read_image(entry.path);
            noisy = add_poisson_noise(*clean, NoiseSpec{config.seed + entry.line_index});
            // Same values the noisy file on disk would hold.
            for (double& v : noisy->pixels()) {
                v = quantize_pixel(v);
            }
        } catch (const Error& e) {
            err << id << ": " << e.what() << '\n';
            for (Scheme s : config.schemes) {
                rows.push_back({id, std::nullopt, std::nullopt, std::string(to_string(s)), {}, {}, {}, {}});
            }
            continue;
        }
        for (Scheme s : config.schemes) {
            rows.push_back(score_one(id, *clean, *noisy, s, err));
        }
    }

    const std::size_t data_rows = rows.size();
    for (Scheme s : config.schemes) {
        const std::string name(to_string(s));
        std::vector<const BenchRow*> ok;
        for (std::size_t i = 0; i < data_rows; ++i) {
            if (rows[i].scheme == name && rows[i].succeeded()) {
                ok.push_back(&rows[i]);
            }
        }
        BenchRow avg{kAverageRowId, std::nullopt, std::nullopt, name, {}, {}, {}, {}};
        avg.psnr_db = mean_of(ok, &BenchRow::psnr_db);
        avg.ssim = mean_of(ok, &BenchRow::ssim);
        avg.iterations = mean_of(ok, &BenchRow::iterations);
        avg.time_ms = mean_of(ok, &BenchRow::time_ms);
        rows.push_back(std::move(avg));
    }
    return rows;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
    auto field = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    auto integer = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    // Data rows carry whole iteration counts; only averages are fractional.
    auto count = [&](const std::optional<double>& v) {
        if (v && *v == std::floor(*v) && std::fabs(*v) < 1e15) {
            return std::to_string(static_cast<long long>(*v));
        }
        return field(v);
    };

    std::ostringstream os;
    os << kBenchCsvHeader << '\n';
    for (const BenchRow& r : rows) {
        os << r.id << ',' << integer(r.width) << ',' << integer(r.height) << ',' << r.scheme << ','
           << field(r.psnr_db) << ',' << field(r.ssim) << ',' << count(r.iterations) << ',' << field(r.time_ms)
           << '\n';
    }
    return os.str();
}

}  // namespace ptv
