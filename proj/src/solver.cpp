#include "ptv/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "ptv/errors.hpp"

namespace ptv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be finite and > 0, got " + std::to_string(v));
    }
}

void require_data(const Image& f) {
    bool any_positive = false;
    for (double v : f.pixels()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DomainError("data image must be finite and >= 0");
        }
        any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) {
        throw DomainError("data image is identically zero");
    }
}

void require_step_inputs(const Image& u_n, const Image& f, const SolverParams& params) {
    params.validate();
    require_same_shape(u_n, f, "solver step");
    for (double v : f.pixels()) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw DomainError("data image must be finite and >= 0");
        }
    }
}

std::string describe(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
    switch (scheme) {
        case Scheme::semi_implicit:
            return "semi-implicit";
        case Scheme::explicit_euler:
            return "explicit";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
    if (name == "semi-implicit") {
        return Scheme::semi_implicit;
    }
    if (name == "explicit") {
        return Scheme::explicit_euler;
    }
    return std::nullopt;
}

std::string_view to_string(StopEnergy which) noexcept {
    return which == StopEnergy::excess ? "excess" : "functional";
}

std::optional<StopEnergy> parse_stop_energy(std::string_view name) noexcept {
    if (name == "excess") {
        return StopEnergy::excess;
    }
    if (name == "functional") {
        return StopEnergy::functional;
    }
    return std::nullopt;
}

std::string_view to_string(Termination termination) noexcept {
    switch (termination) {
        case Termination::converged:
            return "converged";
        case Termination::max_iter_reached:
            return "max_iter_reached";
        case Termination::numerical_failure:
            return "numerical_failure";
    }
    return "unknown";
}

SolverParams SolverParams::defaults_for(Scheme scheme) noexcept {
    SolverParams p;
    p.scheme = scheme;
    if (scheme == Scheme::explicit_euler) {
        p.tau = 0.01;
        p.tolerance = 0.0;
        p.max_iter = 30;
    }
    return p;
}

void SolverParams::validate() const {
    require_positive(beta, "beta");
    require_positive(tau, "tau");
    require_positive(epsilon, "epsilon");
    require_positive(init_floor, "init_floor");
    require_positive(pixel_floor, "pixel_floor");
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
        throw DomainError("tolerance must be finite and >= 0");
    }
    if (max_iter < 1) {
        throw DomainError("max_iter must be >= 1");
    }
    if (pixel_floor > init_floor) {
        throw DomainError("pixel_floor must not exceed init_floor");
    }
}

double PixelQuadratic::relative_residual(double x) const noexcept {
    const double scale = x * x + std::fabs(a * x) + std::fabs(b);
    return scale > 0.0 ? std::fabs(residual(x)) / scale : 0.0;
}

PixelQuadratic pixel_quadratic(double u_n, double kappa, double f, const SolverParams& params) noexcept {
    return {-u_n - params.tau * (kappa - params.beta), -params.beta * params.tau * f};
}

double solve_pixel_quadratic(double u_n, double kappa, double f, const SolverParams& params) {
    if (!std::isfinite(u_n) || !std::isfinite(kappa) || !std::isfinite(f)) {
        throw NumericalError("pixel solve: non-finite input (u=" + describe(u_n) + ", kappa=" + describe(kappa) +
                             ", f=" + describe(f) + ")");
    }
    if (f < 0.0) {
        throw DomainError("pixel solve: negative data value");
    }
    // u = f with flat curvature is an exact root; skip the rounding of the
    // general formula so stationary pixels stay bit-identical.
    if (kappa == 0.0 && u_n == f && f > 0.0) {
        return f;
    }

    const PixelQuadratic q = pixel_quadratic(u_n, kappa, f, params);
    if (f == 0.0) {
        // Roots are 0 and -a.
        return std::max(-q.a, params.pixel_floor);
    }

    assert(q.b <= 0.0);
    const double disc = q.a * q.a - 4.0 * q.b;
    assert(!(disc < q.a * q.a));
    const double s = std::sqrt(disc);
    const double root = q.a <= 0.0 ? 0.5 * (-q.a + s) : -2.0 * q.b / (q.a + s);
    if (!std::isfinite(root)) {
        throw NumericalError("pixel solve: non-finite root (a=" + describe(q.a) + ", b=" + describe(q.b) + ")");
    }
    return root;
}

Image step_semi_implicit(const Image& u_n, const Image& f, const SolverParams& params) {
    require_step_inputs(u_n, f, params);
    if (!(u_n.min() > 0.0)) {
        throw DomainError("semi-implicit step needs a strictly positive iterate");
    }
    const Image kappa = curvature(u_n, EpsRegularization(params.epsilon));
    Image next(u_n.width(), u_n.height());
    const auto u = u_n.pixels();
    const auto k = kappa.pixels();
    const auto d = f.pixels();
    auto out = next.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = solve_pixel_quadratic(u[i], k[i], d[i], params);
    }
    return next;
}

Image step_explicit(const Image& u_n, const Image& f, const SolverParams& params) {
    require_step_inputs(u_n, f, params);
    const auto u = u_n.pixels();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0) {
            throw NumericalError("explicit step: zero pixel at index " + std::to_string(i));
        }
    }
    if (!u_n.all_finite()) {
        throw NumericalError("explicit step: non-finite iterate");
    }
    const Image kappa = curvature(u_n, EpsRegularization(params.epsilon));
    Image next(u_n.width(), u_n.height());
    const auto k = kappa.pixels();
    const auto d = f.pixels();
    auto out = next.pixels();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = u[i] + params.tau * (k[i] + params.beta * (d[i] / u[i] - 1.0));
        if (!std::isfinite(out[i])) {
            throw NumericalError("explicit step: non-finite value at index " + std::to_string(i));
        }
    }
    return next;
}

double relative_energy_change(double previous, double current) noexcept {
    const double delta = current - previous;
    if (delta == 0.0) {
        return 0.0;
    }
    return std::fabs(delta / current);
}

DenoiseResult denoise(const Image& f, const SolverParams& params) {
    params.validate();
    require_data(f);
    const auto start = std::chrono::steady_clock::now();
    const EpsRegularization reg(params.epsilon);

    Image u = f;
    for (double& v : u.pixels()) {
        v = std::max(v, params.init_floor);
    }

    auto watched = [&](const EnergyValue& e) {
        return params.stop_energy == StopEnergy::excess ? e.excess : e.total;
    };

    DenoiseResult result{u, {}, Termination::max_iter_reached, {}, {}};
    double previous = watched(energy(u, f, params.beta, reg));
    result.trace.reserve(static_cast<std::size_t>(std::min(params.max_iter, 1024)));

    auto fail = [&](std::string why) {
        result.termination = Termination::numerical_failure;
        result.diagnostic = std::move(why);
    };

    for (int it = 1; it <= params.max_iter; ++it) {
        std::optional<Image> stepped;
        try {
            stepped.emplace(params.scheme == Scheme::semi_implicit ? step_semi_implicit(u, f, params)
                                                                   : step_explicit(u, f, params));
        } catch (const NumericalError& e) {
            fail("iteration " + std::to_string(it) + ": " + e.what());
            break;
        }
        Image& next = *stepped;

        IterationRecord rec;
        rec.iteration = it;
        rec.min_px = next.min();
        rec.max_px = next.max();

        if (!next.all_finite()) {
            rec.energy = {kNaN, kNaN, kNaN, kNaN, false};
            rec.stop_energy = kNaN;
            rec.rel_change = kNaN;
            result.trace.push_back(rec);
            fail("iteration " + std::to_string(it) + ": non-finite iterate");
            break;
        }

        rec.energy = energy(next, f, params.beta, reg);
        rec.stop_energy = watched(rec.energy);
        rec.rel_change = rec.energy.valid ? relative_energy_change(previous, rec.stop_energy) : kNaN;
        result.trace.push_back(rec);

        if (!(rec.min_px > 0.0)) {
            u = std::move(next);
            fail("iteration " + std::to_string(it) + ": sign-changing iterate, min pixel " + describe(rec.min_px));
            break;
        }
        if (!rec.energy.valid || !std::isfinite(rec.stop_energy)) {
            u = std::move(next);
            fail("iteration " + std::to_string(it) + ": energy is not finite");
            break;
        }
        if (params.stop_energy == StopEnergy::excess && !(rec.stop_energy > 0.0)) {
            u = std::move(next);
            fail("iteration " + std::to_string(it) + ": energy " + describe(rec.stop_energy) + " is not positive");
            break;
        }

        u = std::move(next);
        previous = rec.stop_energy;
        if (rec.rel_change <= params.tolerance) {
            result.termination = Termination::converged;
            break;
        }
    }

    result.image = std::move(u);
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

}  // namespace ptv
