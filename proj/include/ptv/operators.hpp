#pragma once

#include "ptv/image.hpp"

namespace ptv {

/// The epsilon in sqrt(|grad u|^2 + epsilon), in squared gray levels.
class EpsRegularization {
public:
    static constexpr double kDefault = 1e-6;

    EpsRegularization() = default;
    /// Throws DomainError unless epsilon is finite and > 0.
    explicit EpsRegularization(double epsilon);

    double value() const noexcept { return epsilon_; }

private:
    double epsilon_ = kDefault;
};

struct Gradient {
    Image ux;  // d/dx, along a row
    Image uy;  // d/dy, down a column
};

/// Central differences with unit spacing and replicated boundary.
Gradient gradient(const Image& u);

/// sqrt(ux^2 + uy^2 + epsilon) per pixel.
Image grad_magnitude_eps(const Image& ux, const Image& uy, EpsRegularization reg);

/// div(grad u / |grad u|_eps). Both the gradient and the divergence use
/// central differences with the replicated boundary.
Image curvature(const Image& u, EpsRegularization reg);

struct EnergyValue {
    double total = 0.0;
    double tv_term = 0.0;
    double fidelity_term = 0.0;
    /// E minus its u-independent part: tv_term + beta * sum (u - f - f log(u/f)).
    /// Same minimizer as `total`, but bounded below by tv_term > 0.
    double excess = 0.0;
    /// False when some pixel has u <= 0 where f > 0; `total` and `excess`
    /// are NaN then.
    bool valid = true;
};

/// E(u) = sum |grad u|_eps + beta * sum (u - f log u), with f log u := 0
/// wherever f = 0. Throws ShapeError on mismatched sizes and DomainError on
/// beta <= 0 or negative data.
EnergyValue energy(const Image& u, const Image& f, double beta, EpsRegularization reg);

}  // namespace ptv
