#include "heatlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "heatlab/errors.hpp"

namespace heatlab {

namespace {

using Complex = std::complex<double>;

// Roots of a*g^2 + b*g + c = 0 with real coefficients, a != 0.
std::vector<Complex> quadratic_roots(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        if (q == 0.0) return {Complex(0.0), Complex(0.0)};
        return {Complex(q / a), Complex(c / q)};
    }
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * a);
    return {Complex(re, im), Complex(re, -im)};
}

}  // namespace

HyperbolicSymbol HyperbolicSymbol::from(const SchemeParams& params) {
    return {params.diffusivity.nu(), params.relaxation_time(), params.dt, params.dx};
}

AmplificationResult amplification(Scheme scheme, double r, double theta,
                                  const std::optional<HyperbolicSymbol>& hyperbolic) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("theta must lie in [0, pi]");
    }
    if (scheme != Scheme::Hyperbolic && !(r > 0.0)) {
        throw std::invalid_argument("diffusion number must be positive");
    }
    const double half = std::sin(0.5 * theta);
    const double s = half * half;

    AmplificationResult result;
    result.theta = theta;
    switch (scheme) {
        case Scheme::Explicit:
            result.roots = {Complex(1.0 - 4.0 * r * s)};
            break;
        case Scheme::Implicit:
            result.roots = {Complex(1.0 / (1.0 + 4.0 * r * s))};
            break;
        case Scheme::CrankNicolson:
        case Scheme::CnNonlinear:
        case Scheme::CrossCn:
            result.roots = {Complex((1.0 - 2.0 * r * s) / (1.0 + 2.0 * r * s))};
            break;
        case Scheme::LeapFrog:
            result.roots = quadratic_roots(1.0, 8.0 * r * s, -1.0);
            break;
        case Scheme::DufortFrankel: {
            const double lambda = 2.0 * r;
            result.roots = quadratic_roots(1.0 + lambda, -2.0 * lambda * std::cos(theta), -(1.0 - lambda));
            break;
        }
        case Scheme::Hyperbolic: {
            if (!hyperbolic) throw std::invalid_argument("hyperbolic symbol needs nu, tau, dt and dx");
            const auto& h = *hyperbolic;
            if (!(h.tau > 0.0) || !(h.dt > 0.0) || !(h.dx > 0.0)) {
                throw std::invalid_argument("hyperbolic symbol needs positive tau, dt and dx");
            }
            const double inertia = h.tau / (h.dt * h.dt);
            const double damping = 1.0 / (2.0 * h.dt);
            const double middle = 2.0 * inertia - 4.0 * h.nu * s / (h.dx * h.dx);
            result.roots = quadratic_roots(inertia + damping, -middle, inertia - damping);
            break;
        }
        case Scheme::Saulyev:
            throw std::invalid_argument("no closed-form amplification symbol for the Saulyev scheme");
    }
    for (const auto& g : result.roots) result.max_modulus = std::max(result.max_modulus, std::abs(g));
    return result;
}

double max_amplification(Scheme scheme, double r, const std::optional<HyperbolicSymbol>& hyperbolic,
                         int theta_samples) {
    if (theta_samples < 2) throw std::invalid_argument("need at least 2 theta samples");
    double worst = 0.0;
    for (int i = 0; i < theta_samples; ++i) {
        const double theta = i == theta_samples - 1 ? std::numbers::pi
                                                    : std::numbers::pi * i / (theta_samples - 1);
        worst = std::max(worst, amplification(scheme, r, theta, hyperbolic).max_modulus);
    }
    return worst;
}

double empirical_growth(const RunRecord& record, int window) {
    if (window < 1) throw std::invalid_argument("growth window must be >= 1");
    const std::size_t count = record.snapshots.size();
    if (count < static_cast<std::size_t>(window) + 1) {
        throw std::invalid_argument("record has fewer than window+1 snapshots");
    }
    const std::size_t last = count - 1;
    const std::size_t first = last - static_cast<std::size_t>(window);
    const double end_norm = record.max_norms[last];
    const double start_norm = record.max_norms[first];
    if (start_norm == 0.0 || end_norm == 0.0) {
        throw std::domain_error("growth is undefined for an all-zero field");
    }
    const int steps = record.snapshots[last].time_index - record.snapshots[first].time_index;
    return std::pow(end_norm / start_norm, 1.0 / steps);
}

double observed_order(std::span<const ErrorSample> samples) {
    if (samples.size() < 2) throw std::invalid_argument("observed order needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].h > 0.0) || !(samples[i].error > 0.0)) {
            throw std::invalid_argument("observed order needs positive h and errors");
        }
        if (i > 0 && !(samples[i].h < samples[i - 1].h)) {
            throw std::invalid_argument("observed order needs strictly decreasing h");
        }
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& s : samples) {
        mean_x += std::log(s.h);
        mean_y += std::log(s.error);
    }
    mean_x /= samples.size();
    mean_y /= samples.size();
    double sxy = 0.0, sxx = 0.0;
    for (const auto& s : samples) {
        const double dx = std::log(s.h) - mean_x;
        sxy += dx * (std::log(s.error) - mean_y);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

int support_radius(std::span<const double> values, int source, double threshold) {
    int radius = 0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (std::abs(values[j]) > threshold) {
            radius = std::max(radius, std::abs(static_cast<int>(j) - source));
        }
    }
    return radius;
}

std::vector<int> information_speed(const RunRecord& record, double support_threshold) {
    if (!(support_threshold > 0.0)) throw std::invalid_argument("support threshold must be positive");
    if (record.snapshots.empty()) throw std::invalid_argument("empty run record");
    const auto& initial = record.snapshots.front().values;
    int source = -1;
    for (std::size_t j = 0; j < initial.size(); ++j) {
        if (initial[j] != 0.0) {
            if (source >= 0) throw std::invalid_argument("initial field is not a one-node indicator");
            source = static_cast<int>(j);
        }
    }
    if (source < 0) throw std::invalid_argument("initial field is not a one-node indicator");

    std::vector<int> radii;
    radii.reserve(record.snapshots.size());
    for (const auto& snap : record.snapshots) {
        radii.push_back(support_radius(snap.values, source, support_threshold));
    }
    return radii;
}

DispersionSample dispersion_branches(double nu, double tau, double kappa) {
    if (!(tau > 0.0) || !(nu > 0.0)) throw std::invalid_argument("dispersion needs nu > 0 and tau > 0");
    const Complex i(0.0, 1.0);
    const double stiffness = nu * kappa * kappa;
    const Complex root = std::sqrt(Complex(4.0 * stiffness * tau - 1.0, 0.0));
    DispersionSample out;
    out.kappa = kappa;
    out.omega_parabolic = -i * stiffness;
    out.omega_plus = (-i + root) / (2.0 * tau);
    out.omega_minus = (-i - root) / (2.0 * tau);
    return out;
}

double hyperbolization_error_bound(const ErrorBoundInputs& in) {
    if (in.tau < 0.0 || in.sup_utt < 0.0 || in.horizon < 0.0) {
        throw std::invalid_argument("error bound inputs must be nonnegative");
    }
    const double pi = std::numbers::pi;
    return in.tau * in.sup_utt * (1.0 + 2.0 / std::sqrt(pi)) *
           (8.0 * std::sqrt(2.0) * in.tau + std::pow(2.0 * pi * pi, 0.25) / 2.0 * in.horizon);
}

double truncation_residual(Scheme scheme, const SpaceTimeFunction& solution, const SchemeParams& params, double x,
                           double t) {
    const double dt = params.dt;
    const double dx = params.dx;
    if (!(dt > 0.0) || !(dx > 0.0)) throw std::invalid_argument("dt and dx must be positive");
    auto u = [&](int dj, int dn) { return solution(x + dj * dx, t + dn * dt); };
    auto lap = [&](int dn) { return (u(-1, dn) - 2.0 * u(0, dn) + u(1, dn)) / (dx * dx); };
    const auto& k = params.diffusivity;

    switch (scheme) {
        case Scheme::Explicit:
            return (u(0, 1) - u(0, 0)) / dt - k(u(0, 0)) * lap(0);
        case Scheme::Implicit:
            return (u(0, 1) - u(0, 0)) / dt - k.nu() * lap(1);
        case Scheme::LeapFrog:
            return (u(0, 1) - u(0, -1)) / (2.0 * dt) - k.nu() * lap(0);
        case Scheme::CrankNicolson:
            return (u(0, 1) - u(0, 0)) / dt - 0.5 * k.nu() * (lap(0) + lap(1));
        case Scheme::CnNonlinear:
            return (u(0, 1) - u(0, 0)) / dt - 0.5 * (k(u(0, 0)) * lap(0) + k(u(0, 1)) * lap(1));
        case Scheme::CrossCn:
            return (u(0, 1) - u(0, 0)) / dt - 0.5 * (k(u(0, 1)) * lap(0) + k(u(0, 0)) * lap(1));
        case Scheme::DufortFrankel:
            return (u(0, 1) - u(0, -1)) / (2.0 * dt) -
                   k.nu() * (u(-1, 0) - (u(0, -1) + u(0, 1)) + u(1, 0)) / (dx * dx);
        case Scheme::Saulyev: {
            const double stage1 = (u(0, 1) - u(0, 0)) / dt - k.nu() * (u(1, 0) - (u(0, 0) + u(0, 1)) + u(-1, 1)) / (dx * dx);
            const double stage2 = (u(0, 2) - u(0, 1)) / dt - k.nu() * (u(1, 2) - (u(0, 2) + u(0, 1)) + u(-1, 1)) / (dx * dx);
            return 0.5 * (stage1 + stage2);
        }
        case Scheme::Hyperbolic: {
            const double tau = params.relaxation_time();
            return tau * (u(0, 1) - 2.0 * u(0, 0) + u(0, -1)) / (dt * dt) + (u(0, 1) - u(0, -1)) / (2.0 * dt) -
                   k.nu() * lap(0);
        }
    }
    throw std::invalid_argument("unknown scheme");
}

}  // namespace heatlab
