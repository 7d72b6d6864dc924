// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptv/corpus.hpp"
#include "ptv/image_io.hpp"
#include "ptv/metrics.hpp"
#include "ptv/noise.hpp"
#include "ptv/solver.hpp"

using namespace ptv;
using Clock = std::chrono::steady_clock;

namespace {

// Regression baselines frozen from the first full run.
constexpr int kExplicitFailuresBaseline = 20;
constexpr int kRandomImagesSemiImplicitIterations = 824;
constexpr int kPhotoIterationsBaseline = 50;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Clean image with i.i.d. uniform intensities on [0, 255].
Image random_intensity_image(int side, std::uint64_t seed) {
    Image img(side, side);
    PixelRng rng(seed, 0x5EED5EEDULL);
    for (double& v : img.pixels()) v = 255.0 * rng.next_uniform();
    return img;
}

Image quantized(Image img) {
    for (double& v : img.pixels()) v = quantize_pixel(v);
    return img;
}

std::vector<Image> noisy_random_images() {
    std::vector<Image> out;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        out.push_back(add_poisson_noise(random_intensity_image(64, seed), {seed}));
    }
    return out;
}

// Every converged run collected here feeds the stop-rule audit.
struct ConvergedRun {
    std::string label;
    Image f;
    SolverParams params;
    DenoiseResult result;
};
std::vector<ConvergedRun> g_converged;

void remember(const std::string& label, const Image& f, const SolverParams& p, const DenoiseResult& r) {
    if (r.termination == Termination::converged) g_converged.push_back({label, f, p, r});
}

bool explicit_broke(const DenoiseResult& r) {
    for (const auto& rec : r.trace) {
        if (!(rec.min_px > 0.0) || !std::isfinite(rec.min_px) || !std::isfinite(rec.max_px)) return true;
    }
    return r.termination == Termination::numerical_failure;
}

Outcome positivity() {
    const auto t0 = Clock::now();
    const SolverParams p = SolverParams::defaults_for(Scheme::semi_implicit);
    int bad = 0;
    double min_seen = INFINITY;
    const auto images = noisy_random_images();
    for (std::size_t k = 0; k < images.size(); ++k) {
        const DenoiseResult r = denoise(images[k], p);
        for (const auto& rec : r.trace) {
            min_seen = std::min(min_seen, rec.min_px);
            if (!(rec.min_px > 0.0) || rec.min_px < p.pixel_floor) ++bad;
        }
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 30.0,
            "non-positive iterates " + std::to_string(bad) + ", min pixel " + fmt("%.3g", min_seen) + ", " +
                fmt("%.2f s", secs)};
}

Outcome stability_contrast() {
    const auto images = noisy_random_images();
    const SolverParams si = SolverParams::defaults_for(Scheme::semi_implicit);
    SolverParams ex = SolverParams::defaults_for(Scheme::explicit_euler);
    ex.tau = 0.7;

    int si_converged = 0, si_iterations = 0, ex_broken = 0;
    for (std::size_t k = 0; k < images.size(); ++k) {
        const DenoiseResult a = denoise(images[k], si);
        remember("random#" + std::to_string(k), images[k], si, a);
        si_converged += a.termination == Termination::converged && a.iterations() <= 500;
        si_iterations += a.iterations();
        const DenoiseResult b = denoise(images[k], ex);
        ex_broken += explicit_broke(b) && b.iterations() <= 30;
    }

    // Piecewise-constant content over the full 8-bit range, reported for
    // context: sign changes need counts near zero, so they are rarer there.
    int pc_broken = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Image f = add_poisson_noise(random_piecewise_constant(64, 64, seed, 6, 0.0, 255.0), {seed});
        pc_broken += explicit_broke(denoise(f, ex));
    }

    const bool pass = si_converged == 20 && ex_broken >= 18 && ex_broken == kExplicitFailuresBaseline &&
                      si_iterations == kRandomImagesSemiImplicitIterations;
    return {pass, "semi-implicit converged " + std::to_string(si_converged) + "/20 (" +
                      std::to_string(si_iterations) + " iterations total), explicit broke " +
                      std::to_string(ex_broken) + "/20; piecewise-constant explicit broke " +
                      std::to_string(pc_broken) + "/20 (informational)"};
}

Outcome paper_defaults_converge() {
    const Image clean = read_image(std::filesystem::path(PTV_DATA_DIR) / "photo256.pgm");
    const Image noisy = quantized(add_poisson_noise(clean, {0}));
    SolverParams p;
    p.beta = 10.0;
    p.tau = 0.7;
    p.tolerance = 3.0e-4;
    const DenoiseResult r = denoise(noisy, p);
    remember("photo", noisy, p, r);
    const bool pass = r.termination == Termination::converged && r.iterations() <= 200 &&
                      r.iterations() == kPhotoIterationsBaseline;
    return {pass, std::to_string(r.iterations()) + " iterations, " + fmt("%.3f s", r.wall_time.count()) +
                      ", psnr " + fmt("%.2f", psnr(clean, noisy)) + " -> " + fmt("%.2f dB", psnr(clean, r.image)) +
                      ", ssim " + fmt("%.3f", ssim(clean, noisy)) + " -> " + fmt("%.3f", ssim(clean, r.image))};
}

Outcome fidelity_improves() {
    const SolverParams p = SolverParams::defaults_for(Scheme::semi_implicit);
    int improved = 0;
    std::ostringstream worst;
    double min_gain = INFINITY;
    const auto corpus = synthetic_corpus();
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const Image& clean = corpus[k].image;
        const Image noisy = quantized(add_poisson_noise(clean, {k}));
        const DenoiseResult r = denoise(noisy, p);
        remember(corpus[k].id, noisy, p, r);
        const double gain = psnr(clean, r.image) - psnr(clean, noisy);
        const bool ok = gain > 0.0 && ssim(clean, r.image) > ssim(clean, noisy);
        improved += ok;
        min_gain = std::min(min_gain, gain);
    }
    return {improved == static_cast<int>(corpus.size()),
            std::to_string(improved) + "/" + std::to_string(corpus.size()) + " improved, smallest psnr gain " +
                fmt("%.2f dB", min_gain)};
}

Outcome quadratic_roots() {
    const auto t0 = Clock::now();
    std::mt19937_64 gen(20160601);
    std::uniform_real_distribution<double> log_u(-3.0, 3.0), log_f(-3.0, 3.0), kappa(-10.0, 10.0);
    std::uniform_real_distribution<double> log_tau(-3.0, 1.0), log_beta(-2.0, 2.0), unit(0.0, 1.0);
    long failures = 0;
    double worst = 0.0;
    SolverParams p;
    for (long n = 0; n < 1000000; ++n) {
        p.tau = std::pow(10.0, log_tau(gen));
        p.beta = std::pow(10.0, log_beta(gen));
        const double u = std::pow(10.0, log_u(gen));
        const double k = kappa(gen);
        const double f = unit(gen) < 0.05 ? 0.0 : std::pow(10.0, log_f(gen));
        const double x = solve_pixel_quadratic(u, k, f, p);
        bool ok = x >= 0.0;
        if (f > 0.0) {
            const double res = pixel_quadratic(u, k, f, p).relative_residual(x);
            worst = std::max(worst, res);
            ok = ok && x > 0.0 && res <= 1e-9;
        }
        failures += !ok;
    }
    const double secs = seconds_since(t0);
    return {failures == 0 && secs < 10.0, std::to_string(failures) + " failures in 1e6 tuples, worst residual " +
                                              fmt("%.2e", worst) + ", " + fmt("%.2f s", secs)};
}

Outcome fixed_points() {
    int bad = 0, runs = 0;
    for (Scheme s : {Scheme::semi_implicit, Scheme::explicit_euler}) {
        for (double c : {1.0, 17.0, 100.0, 254.0, 0.37, 123.456}) {
            for (int side : {8, 33}) {
                const Image f(side, side + 3, c);
                const DenoiseResult r = denoise(f, SolverParams::defaults_for(s));
                ++runs;
                bad += !(r.image == f && r.termination == Termination::converged && r.iterations() == 1);
            }
        }
    }
    return {bad == 0, std::to_string(runs - bad) + "/" + std::to_string(runs) + " constant images unchanged bit-for-bit"};
}

Outcome oracle_equivalence() {
    std::mt19937_64 gen(77);
    double worst = 0.0, worst_ssim = 0.0;
    const SolverParams si = SolverParams::defaults_for(Scheme::semi_implicit);
    const SolverParams ex = SolverParams::defaults_for(Scheme::explicit_euler);
    const double eps = si.epsilon;
    for (int trial = 0; trial < 100; ++trial) {
        const Image u = oracle::random_image(8, 8, gen, 0.5, 255.0);
        const Image f = oracle::random_image(8, 8, gen, 0.0, 255.0);
        const auto gu = oracle::from(u), gf = oracle::from(f);
        const auto g = gradient(u);
        const Image k = curvature(u, EpsRegularization(eps));
        const Image nsi = step_semi_implicit(u, f, si);
        const Image nex = step_explicit(u, f, ex);
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                const double ko = oracle::curvature_at(gu, i, j, eps);
                worst = std::max({worst, oracle::rel_diff(g.ux(i, j), oracle::dx(gu, i, j)),
                                  oracle::rel_diff(g.uy(i, j), oracle::dy(gu, i, j)), oracle::rel_diff(k(i, j), ko),
                                  oracle::rel_diff(nsi(i, j), oracle::semi_implicit_pixel(u(i, j), ko, f(i, j), si.beta, si.tau)),
                                  oracle::rel_diff(nex(i, j), oracle::explicit_pixel(u(i, j), ko, f(i, j), ex.beta, ex.tau))});
            }
        }
        const auto e = energy(u, f, 10.0, EpsRegularization(eps));
        const auto o = oracle::energy(gu, gf, 10.0, eps);
        worst = std::max({worst, oracle::rel_diff(e.total, o.total), oracle::rel_diff(e.tv_term, o.tv),
                          oracle::rel_diff(e.fidelity_term, o.fidelity), oracle::rel_diff(e.excess, o.excess)});

        const Image a = oracle::random_image(32, 32, gen);
        const Image b = oracle::random_image(32, 32, gen);
        worst_ssim = std::max(worst_ssim, std::fabs(ssim(a, b) - oracle::ssim(oracle::from(a), oracle::from(b))));
    }
    return {worst <= 1e-12 && worst_ssim <= 1e-6,
            "worst relative diff " + fmt("%.2e", worst) + ", worst ssim diff " + fmt("%.2e", worst_ssim)};
}

// Runs after the criteria that populate g_converged.
Outcome stop_rule_integrity() {
    int bad = 0;
    std::string first_bad;
    for (const auto& run : g_converged) {
        const auto& t = run.result.trace;
        bool ok = !t.empty() && t.back().rel_change <= run.params.tolerance;
        for (std::size_t i = 0; i + 1 < t.size(); ++i) ok = ok && t[i].rel_change > run.params.tolerance;
        for (std::size_t i = 1; i < t.size(); ++i) {
            const double recomputed = relative_energy_change(t[i - 1].stop_energy, t[i].stop_energy);
            ok = ok && recomputed == t[i].rel_change;
        }
        Image u0 = run.f;
        for (double& v : u0.pixels()) v = std::max(v, run.params.init_floor);
        const EnergyValue e0 = energy(u0, run.f, run.params.beta, EpsRegularization(run.params.epsilon));
        const EnergyValue ef = energy(run.result.image, run.f, run.params.beta, EpsRegularization(run.params.epsilon));
        ok = ok && ef.total <= e0.total && ef.excess <= e0.excess;
        if (!ok) {
            ++bad;
            if (first_bad.empty()) first_bad = run.label;
        }
    }
    return {bad == 0 && !g_converged.empty(),
            std::to_string(g_converged.size() - bad) + "/" + std::to_string(g_converged.size()) +
                " converged runs consistent" + (first_bad.empty() ? "" : ", first bad: " + first_bad)};
}

Outcome noise_statistics() {
    std::string detail;
    bool pass = true;
    for (double lambda : {5.0, 30.0, 100.0, 200.0}) {
        const Image img(256, 256, lambda);
        const Image noisy = add_poisson_noise(img, {static_cast<std::uint64_t>(lambda)});
        double sum = 0.0;
        for (double v : noisy.pixels()) sum += v;
        const double mean = sum / static_cast<double>(noisy.size());
        double ss = 0.0;
        for (double v : noisy.pixels()) ss += (v - mean) * (v - mean);
        const double var = ss / static_cast<double>(noisy.size() - 1);
        const bool ok = std::fabs(mean - lambda) <= 3.0 * std::sqrt(lambda) / 256.0 && std::fabs(var - lambda) <= 0.15 * lambda;
        pass = pass && ok;
        detail += "lambda " + fmt("%.0f", lambda) + ": mean " + fmt("%.3f", mean) + " var " + fmt("%.2f", var) + "; ";
    }

    Image mixed = random_intensity_image(128, 3);
    for (int i = 0; i < 128; i += 3)
        for (int j = 0; j < 128; j += 2) mixed(i, j) = 0.0;
    const Image a = add_poisson_noise(mixed, {123});
    bool zeros_kept = true;
    for (std::size_t k = 0; k < mixed.size(); ++k) zeros_kept = zeros_kept && (mixed.pixels()[k] != 0.0 || a.pixels()[k] == 0.0);
    const bool deterministic = a == add_poisson_noise(mixed, {123}) && a == add_poisson_noise(mixed, {123}, 2) &&
                               a == add_poisson_noise(mixed, {123}, 8);
    detail += std::string("zeros kept ") + (zeros_kept ? "yes" : "no") + ", deterministic across threads " +
              (deterministic ? "yes" : "no");
    return {pass && zeros_kept && deterministic, detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"C1 positivity of every semi-implicit iterate", positivity},
        {"C2 large-time-step stability contrast", stability_contrast},
        {"C3 default parameters converge on the 256x256 photo", paper_defaults_converge},
        {"C4 denoising improves PSNR and SSIM on the synthetic corpus", fidelity_improves},
        {"C5 pixel quadratic roots over 1e6 random tuples", quadratic_roots},
        {"C6 constant images are exact fixed points", fixed_points},
        {"C7 oracle equivalence of operators, steppers, SSIM", oracle_equivalence},
        {"C8 stop rule and trace integrity", stop_rule_integrity},
        {"C9 Poisson noise statistics and determinism", noise_statistics},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
