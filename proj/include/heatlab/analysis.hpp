#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "heatlab/schemes.hpp"
#include "heatlab/simulation.hpp"

namespace heatlab {

/// Von Neumann symbol of one scheme at Fourier phase theta = kappa*dx.
struct AmplificationResult {
    double theta = 0.0;
    std::vector<std::complex<double>> roots;
    double max_modulus = 0.0;
};

/// Extra inputs the hyperbolic symbol needs beyond r.
struct HyperbolicSymbol {
    double nu = 1.0;
    double tau = 0.0;
    double dt = 0.0;
    double dx = 0.0;

    static HyperbolicSymbol from(const SchemeParams& params);
};

inline constexpr int kDefaultThetaSamples = 721;

/// Characteristic roots g(theta) with s = sin^2(theta/2). Requires theta in
/// [0, pi] and r > 0 (the hyperbolic symbol reads `hyperbolic` instead of r).
/// Saulyev has no closed-form entry here; it is checked empirically.
AmplificationResult amplification(Scheme scheme, double r, double theta,
                                  const std::optional<HyperbolicSymbol>& hyperbolic = std::nullopt);

/// Max of |g| over a uniform theta grid on [0, pi].
double max_amplification(Scheme scheme, double r, const std::optional<HyperbolicSymbol>& hyperbolic = std::nullopt,
                         int theta_samples = kDefaultThetaSamples);

/// Geometric-mean per-step growth of the max-norm over the last `window`
/// snapshot intervals.
double empirical_growth(const RunRecord& record, int window);

struct ErrorSample {
    double h = 0.0;
    double error = 0.0;
};

/// Least-squares slope of log(error) against log(h).
double observed_order(std::span<const ErrorSample> samples);

/// max |j - source| over nodes with |u_j| > threshold; 0 if none.
int support_radius(std::span<const double> values, int source, double threshold);

/// Support radius of every snapshot around the node of the one-node initial field.
std::vector<int> information_speed(const RunRecord& record, double support_threshold = 1e-14);

struct DispersionSample {
    double kappa = 0.0;
    std::complex<double> omega_parabolic;
    std::complex<double> omega_plus;
    std::complex<double> omega_minus;
};

/// Roots of -tau w^2 - i w + nu kappa^2 = 0 and the parabolic w = -i nu kappa^2.
DispersionSample dispersion_branches(double nu, double tau, double kappa);

struct ErrorBoundInputs {
    double tau = 0.0;
    double sup_utt = 0.0;  // sup of |d^2 u_p / dt^2| over the dependence cone
    double horizon = 0.0;
};

/// Distance bound between hyperbolic and parabolic solutions for the same data.
double hyperbolization_error_bound(const ErrorBoundInputs& inputs);

using SpaceTimeFunction = std::function<double(double x, double t)>;

/// Residual of the scheme's difference relation evaluated on samples of a
/// smooth function around (x, t), scaled like u_t - nu u_xx. For Saulyev it is
/// the average of the two stage relations spanning t..t+2dt.
double truncation_residual(Scheme scheme, const SpaceTimeFunction& solution, const SchemeParams& params, double x,
                           double t);

}  // namespace heatlab
