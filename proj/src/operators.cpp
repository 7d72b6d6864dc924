#include "ptv/operators.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ptv/errors.hpp"

namespace ptv {

EpsRegularization::EpsRegularization(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("epsilon must be finite and > 0, got " + std::to_string(epsilon));
    }
}

Gradient gradient(const Image& u) {
    const int w = u.width();
    const int h = u.height();
    Gradient g{Image(w, h), Image(w, h)};
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            g.ux(i, j) = 0.5 * (u.clamped(i, j + 1) - u.clamped(i, j - 1));
            g.uy(i, j) = 0.5 * (u.clamped(i + 1, j) - u.clamped(i - 1, j));
        }
    }
    return g;
}

Image grad_magnitude_eps(const Image& ux, const Image& uy, EpsRegularization reg) {
    require_same_shape(ux, uy, "grad_magnitude_eps");
    Image mag(ux.width(), ux.height());
    const auto gx = ux.pixels();
    const auto gy = uy.pixels();
    auto out = mag.pixels();
    const double eps = reg.value();
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = std::sqrt(gx[k] * gx[k] + gy[k] * gy[k] + eps);
    }
    return mag;
}

Image curvature(const Image& u, EpsRegularization reg) {
    Gradient g = gradient(u);
    const Image mag = grad_magnitude_eps(g.ux, g.uy, reg);
    // Normalize in place: g now holds the unit normal field.
    auto nx = g.ux.pixels();
    auto ny = g.uy.pixels();
    const auto m = mag.pixels();
    for (std::size_t k = 0; k < m.size(); ++k) {
        nx[k] /= m[k];
        ny[k] /= m[k];
    }

    const int w = u.width();
    const int h = u.height();
    Image div(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            div(i, j) = 0.5 * (g.ux.clamped(i, j + 1) - g.ux.clamped(i, j - 1)) +
                        0.5 * (g.uy.clamped(i + 1, j) - g.uy.clamped(i - 1, j));
        }
    }
    return div;
}

EnergyValue energy(const Image& u, const Image& f, double beta, EpsRegularization reg) {
    require_same_shape(u, f, "energy");
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw DomainError("beta must be finite and > 0, got " + std::to_string(beta));
    }

    const Gradient g = gradient(u);
    const Image mag = grad_magnitude_eps(g.ux, g.uy, reg);

    EnergyValue e;
    for (double m : mag.pixels()) {
        e.tv_term += m;
    }

    const auto uu = u.pixels();
    const auto ff = f.pixels();
    double divergence = 0.0;
    for (std::size_t k = 0; k < uu.size(); ++k) {
        if (ff[k] < 0.0) {
            throw DomainError("energy: data image has a negative pixel");
        }
        if (ff[k] == 0.0) {
            e.fidelity_term += uu[k];
            divergence += uu[k];
        } else if (uu[k] > 0.0) {
            e.fidelity_term += uu[k] - ff[k] * std::log(uu[k]);
            divergence += (uu[k] - ff[k]) - ff[k] * std::log(uu[k] / ff[k]);
        } else {
            e.valid = false;
        }
    }

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    e.total = e.valid ? e.tv_term + beta * e.fidelity_term : nan;
    e.excess = e.valid ? e.tv_term + beta * divergence : nan;
    return e;
}

}  // namespace ptv
