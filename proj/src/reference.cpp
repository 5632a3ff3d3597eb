#include "heatlab/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heatlab {

double fundamental_solution(double x, double t, double nu) {
    if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
    if (!(nu > 0.0)) throw std::invalid_argument("heat kernel needs nu > 0");
    const double spread = 4.0 * nu * t;
    return std::exp(-x * x / spread) / std::sqrt(std::numbers::pi * spread);
}

double evaluate_series(const SineSeriesSolution& sol, double x, double t) {
    double u = 0.0;
    for (const auto& mode : sol.modes) {
        const double k = mode.m * std::numbers::pi / sol.length;
        u += mode.amplitude * std::sin(k * x) * std::exp(-sol.nu * k * k * t);
    }
    return u;
}

double hyperbolic_mode_amplitude(double nu, double tau, double kappa, double t) {
    if (!(tau > 0.0)) throw std::invalid_argument("hyperbolic mode needs tau > 0");
    // Characteristic roots of tau s^2 + s + nu kappa^2 = 0.
    const double stiffness = nu * kappa * kappa;
    const double disc = 1.0 - 4.0 * tau * stiffness;
    if (disc > 0.0) {
        const double root = std::sqrt(disc);
        const double slow = -2.0 * stiffness / (1.0 + root);  // cancellation-free form
        const double fast = -(1.0 + root) / (2.0 * tau);
        return (fast * std::exp(slow * t) - slow * std::exp(fast * t)) / (fast - slow);
    }
    const double decay = -1.0 / (2.0 * tau);
    if (disc == 0.0) {
        return std::exp(decay * t) * (1.0 - decay * t);
    }
    const double freq = std::sqrt(-disc) / (2.0 * tau);
    return std::exp(decay * t) * (std::cos(freq * t) - decay / freq * std::sin(freq * t));
}

double hyperbolic_mode_solution(double nu, double tau, double length, int m, double t, double x) {
    const double kappa = m * std::numbers::pi / length;
    return std::sin(kappa * x) * hyperbolic_mode_amplitude(nu, tau, kappa, t);
}

}  // namespace heatlab
