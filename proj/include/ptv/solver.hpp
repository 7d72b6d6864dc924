#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptv/image.hpp"
#include "ptv/operators.hpp"

namespace ptv {

enum class Scheme {
    semi_implicit,  // implicit fidelity, explicit curvature; positivity preserving
    explicit_euler, // forward-time central-space baseline
};

std::string_view to_string(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

/// Which energy the relative-change stop rule watches.
enum class StopEnergy {
    excess,      // EnergyValue::excess; positive, sensitive to the actual descent
    functional,  // EnergyValue::total; dominated by -beta sum f log u on 8-bit data
};

std::string_view to_string(StopEnergy which) noexcept;
std::optional<StopEnergy> parse_stop_energy(std::string_view name) noexcept;

struct SolverParams {
    double beta = 10.0;
    double tau = 0.7;
    double epsilon = EpsRegularization::kDefault;
    /// Relative-energy stop threshold. Zero keeps only the exact-stationarity
    /// stop, which is how the explicit baseline runs a fixed iteration count.
    double tolerance = 3e-4;
    int max_iter = 500;
    Scheme scheme = Scheme::semi_implicit;
    double init_floor = 1e-3;
    double pixel_floor = 1e-8;
    StopEnergy stop_energy = StopEnergy::excess;

    /// beta = 10, tau = 0.7, tol = 3e-4, 500 iterations for the semi-implicit
    /// scheme; beta = 10, tau = 0.01, 30 fixed iterations for the baseline.
    static SolverParams defaults_for(Scheme scheme) noexcept;

    /// Throws DomainError if any field is out of range.
    void validate() const;
};

struct IterationRecord {
    int iteration = 0;
    EnergyValue energy;
    /// The energy selected by SolverParams::stop_energy.
    double stop_energy = 0.0;
    /// |(E_n+1 - E_n) / E_n+1| of `stop_energy`.
    double rel_change = 0.0;
    double min_px = 0.0;
    double max_px = 0.0;
};

using IterationTrace = std::vector<IterationRecord>;

enum class Termination { converged, max_iter_reached, numerical_failure };

std::string_view to_string(Termination termination) noexcept;

struct DenoiseResult {
    Image image;
    IterationTrace trace;
    Termination termination = Termination::max_iter_reached;
    std::chrono::duration<double> wall_time{0.0};
    /// Why the run stopped, when termination is numerical_failure.
    std::string diagnostic;

    int iterations() const noexcept { return static_cast<int>(trace.size()); }
};

/// Coefficients of x^2 + a x + b = 0 for one semi-implicit pixel update:
/// a = -u_n - tau (kappa - beta), b = -beta tau f.
struct PixelQuadratic {
    double a;
    double b;

    double residual(double x) const noexcept { return (x * x + a * x) + b; }
    /// |residual| scaled by the magnitude of the summands.
    double relative_residual(double x) const noexcept;
};

PixelQuadratic pixel_quadratic(double u_n, double kappa, double f, const SolverParams& params) noexcept;

/// Nonnegative root of the per-pixel quadratic. Strictly positive when
/// f > 0; for f = 0 returns max(-a, pixel_floor). Throws NumericalError on
/// non-finite input or output.
double solve_pixel_quadratic(double u_n, double kappa, double f, const SolverParams& params);

/// One semi-implicit step. Requires u_n > 0 and f >= 0.
Image step_semi_implicit(const Image& u_n, const Image& f, const SolverParams& params);

/// One forward-Euler step of the flow; no clamping is applied, so the result
/// may change sign. Throws NumericalError on a zero pixel in u_n or a
/// non-finite result.
Image step_explicit(const Image& u_n, const Image& f, const SolverParams& params);

/// |(current - previous) / current|; zero when the energies are equal.
double relative_energy_change(double previous, double current) noexcept;

/// Runs the selected scheme from u0 = max(f, init_floor) until the relative
/// energy change drops to the tolerance, max_iter is hit, or an iterate
/// leaves u > 0 or becomes non-finite. In excess mode a non-positive energy
/// is also a numerical failure. Throws DomainError if f has negative
/// pixels or is identically zero.
DenoiseResult denoise(const Image& f, const SolverParams& params);

}  // namespace ptv
