#include "ptv/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ptv/bench.hpp"
#include "ptv/corpus.hpp"
#include "ptv/errors.hpp"
#include "ptv/image_io.hpp"
#include "ptv/metrics.hpp"
#include "ptv/noise.hpp"
#include "ptv/solver.hpp"

namespace ptv {

namespace fs = std::filesystem;

namespace {

std::string fixed6(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string general(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_trace(const IterationTrace& trace, const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open trace file " + path.string());
    }
    out << "iter,energy,rel_change,min_px,max_px\n";
    for (const IterationRecord& r : trace) {
        out << r.iteration << ',' << general(r.stop_energy) << ',' << general(r.rel_change) << ','
            << general(r.min_px) << ',' << general(r.max_px) << '\n';
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

struct NoiseArgs {
    std::string in, out;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    CLI::Option* seed_opt = nullptr;
};

int cmd_noise(const NoiseArgs& a, std::ostream& out) {
    std::uint64_t seed = a.seed;
    if (a.seed_opt->count() == 0) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    const Image clean = read_image(a.in);
    write_image(add_poisson_noise(clean, NoiseSpec{seed}, a.threads), a.out);
    out << "seed=" << seed << '\n';
    return kExitOk;
}

struct DenoiseArgs {
    std::string in, out, trace, scheme = "semi-implicit", stop_energy = "excess";
    SolverParams given;
    CLI::Option* beta = nullptr;
    CLI::Option* tau = nullptr;
    CLI::Option* tol = nullptr;
    CLI::Option* eps = nullptr;
    CLI::Option* max_iter = nullptr;
};

int cmd_denoise(const DenoiseArgs& a, std::ostream& out, std::ostream& err) {
    const auto scheme = parse_scheme(a.scheme);
    if (!scheme) {
        err << "error: unknown scheme '" << a.scheme << "' (semi-implicit|explicit)\n";
        return kExitError;
    }
    SolverParams p = SolverParams::defaults_for(*scheme);
    if (a.beta->count()) p.beta = a.given.beta;
    if (a.tau->count()) p.tau = a.given.tau;
    if (a.tol->count()) p.tolerance = a.given.tolerance;
    if (a.eps->count()) p.epsilon = a.given.epsilon;
    if (a.max_iter->count()) p.max_iter = a.given.max_iter;
    const auto stop = parse_stop_energy(a.stop_energy);
    if (!stop) {
        err << "error: unknown stop energy '" << a.stop_energy << "' (excess|functional)\n";
        return kExitError;
    }
    p.stop_energy = *stop;

    const Image noisy = read_image(a.in);
    const DenoiseResult r = denoise(noisy, p);
    write_image(r.image, a.out);
    if (!a.trace.empty()) {
        write_trace(r.trace, a.trace);
    }

    int increases = 0;
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        if (r.trace[i].stop_energy > r.trace[i - 1].stop_energy) {
            ++increases;
        }
    }
    out << "termination=" << to_string(r.termination) << " iterations=" << r.iterations()
        << " wall_time_s=" << general(r.wall_time.count()) << " energy_increases=" << increases << '\n';
    if (r.termination == Termination::numerical_failure) {
        err << "numerical failure: " << r.diagnostic << '\n';
        return kExitNumericalFailure;
    }
    return kExitOk;
}

int cmd_metrics(const std::string& ref, const std::string& test, std::ostream& out) {
    const MetricReport m = compare(read_image(ref), read_image(test));
    out << "psnr_db=" << fixed6(m.psnr) << " ssim=" << fixed6(m.ssim) << '\n';
    return kExitOk;
}

struct BenchArgs {
    std::string manifest, csv;
    std::uint64_t seed = 0;
    std::vector<std::string> schemes{"semi-implicit", "explicit"};
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    BenchConfig config;
    config.seed = a.seed;
    config.schemes.clear();
    for (const std::string& name : a.schemes) {
        const auto s = parse_scheme(name);
        if (!s) {
            err << "error: unknown scheme '" << name << "'\n";
            return kExitError;
        }
        config.schemes.push_back(*s);
    }
    const std::vector<BenchRow> rows = run_bench(read_manifest(a.manifest), config, err);
    std::ofstream csv(a.csv);
    if (!csv) {
        throw IoError("cannot open " + a.csv);
    }
    csv << format_bench_csv(rows);
    if (!csv) {
        throw IoError("write failed: " + a.csv);
    }

    std::size_t ok = 0;
    std::size_t data = 0;
    for (const BenchRow& r : rows) {
        if (r.id == kAverageRowId) {
            out << "average " << r.scheme << ": psnr_db=" << (r.psnr_db ? fixed6(*r.psnr_db) : "-")
                << " ssim=" << (r.ssim ? fixed6(*r.ssim) : "-")
                << " time_ms=" << (r.time_ms ? fixed6(*r.time_ms) : "-") << '\n';
            continue;
        }
        ++data;
        ok += r.succeeded() ? 1 : 0;
    }
    out << ok << "/" << data << " runs succeeded\n";
    return ok > 0 ? kExitOk : kExitError;
}

int cmd_corpus(const std::string& dir, const std::string& photo, std::ostream& out) {
    fs::create_directories(dir);
    std::ofstream manifest(fs::path(dir) / "manifest.txt");
    if (!manifest) {
        throw IoError("cannot write manifest in " + dir);
    }
    for (const NamedImage& item : synthetic_corpus()) {
        write_image(item.image, fs::path(dir) / (item.id + ".pgm"));
        manifest << item.id << ".pgm\n";
    }
    if (!photo.empty()) {
        const fs::path name = fs::path(photo).stem().string() + ".pgm";
        write_image(read_image(photo), fs::path(dir) / name);
        manifest << name.string() << '\n';
    }
    out << "wrote corpus to " << dir << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Poisson-noise total-variation denoising toolkit", "ptv"};
    app.require_subcommand(1);

    NoiseArgs noise;
    auto* noise_cmd = app.add_subcommand("noise", "Corrupt an image with seeded Poisson noise");
    noise_cmd->add_option("--in", noise.in, "Clean input image")->required();
    noise_cmd->add_option("--out", noise.out, "Noisy output image (.pgm or .png)")->required();
    noise.seed_opt = noise_cmd->add_option("--seed", noise.seed, "RNG seed (generated and printed if omitted)");
    noise_cmd->add_option("--threads", noise.threads, "Worker threads")->check(CLI::Range(1u, 64u));

    DenoiseArgs dn;
    auto* dn_cmd = app.add_subcommand("denoise", "Restore a Poisson-noisy image");
    dn_cmd->add_option("--in", dn.in, "Noisy input image")->required();
    dn_cmd->add_option("--out", dn.out, "Restored output image")->required();
    dn_cmd->add_option("--scheme", dn.scheme, "semi-implicit | explicit")->capture_default_str();
    dn.beta = dn_cmd->add_option("--beta", dn.given.beta, "Fidelity weight");
    dn.tau = dn_cmd->add_option("--tau", dn.given.tau, "Time step");
    dn.tol = dn_cmd->add_option("--tol", dn.given.tolerance, "Relative energy stop threshold");
    dn.eps = dn_cmd->add_option("--eps", dn.given.epsilon, "Gradient-magnitude regularization");
    dn.max_iter = dn_cmd->add_option("--max-iter", dn.given.max_iter, "Iteration cap");
    dn_cmd->add_option("--trace", dn.trace, "Per-iteration trace CSV");
    dn_cmd->add_option("--stop-energy", dn.stop_energy, "Energy watched by the stop rule: excess | functional")
        ->capture_default_str();

    std::string ref, test;
    auto* m_cmd = app.add_subcommand("metrics", "PSNR and SSIM of an image against a reference");
    m_cmd->add_option("--ref", ref, "Reference (clean) image")->required();
    m_cmd->add_option("--in", test, "Image to score")->required();

    BenchArgs bench;
    auto* b_cmd = app.add_subcommand("bench", "Corrupt, denoise, and score every image of a manifest");
    b_cmd->add_option("--manifest", bench.manifest, "Text file with one image path per line")->required();
    b_cmd->add_option("--csv", bench.csv, "Output CSV")->required();
    b_cmd->add_option("--seed", bench.seed, "Base seed; image k uses seed + k")->capture_default_str();
    b_cmd->add_option("--scheme", bench.schemes, "Schemes to run (repeatable or comma separated)")
        ->delimiter(',')
        ->capture_default_str();

    std::string corpus_dir, photo;
    auto* c_cmd = app.add_subcommand("corpus", "Write the synthetic test corpus and its manifest");
    c_cmd->add_option("--out", corpus_dir, "Output directory")->required();
    c_cmd->add_option("--photo", photo, "Optional photo to append to the corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*noise_cmd) return cmd_noise(noise, out);
        if (*dn_cmd) return cmd_denoise(dn, out, err);
        if (*m_cmd) return cmd_metrics(ref, test, out);
        if (*b_cmd) return cmd_bench(bench, out, err);
        if (*c_cmd) return cmd_corpus(corpus_dir, photo, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace ptv
