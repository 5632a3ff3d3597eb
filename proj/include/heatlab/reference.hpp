#pragma once

#include <vector>

namespace heatlab {

/// Heat kernel G(x,t) = exp(-x^2/(4 nu t)) / sqrt(4 pi nu t). Requires t > 0.
double fundamental_solution(double x, double t, double nu);

struct SineMode {
    int m = 1;
    double amplitude = 1.0;
};

/// u(x,t) = sum_m a_m sin(m pi x / L) exp(-nu (m pi / L)^2 t): exact solution
/// of u_t = nu u_xx with homogeneous Dirichlet data on [0, L].
struct SineSeriesSolution {
    double length = 1.0;
    double nu = 1.0;
    std::vector<SineMode> modes;
};

double evaluate_series(const SineSeriesSolution& sol, double x, double t);

/// Time factor A(t) of the mode sin(kappa x) under tau u_tt + u_t = nu u_xx
/// with A(0) = 1, A'(0) = 0.
double hyperbolic_mode_amplitude(double nu, double tau, double kappa, double t);

/// Exact solution of tau u_tt + u_t - nu u_xx = 0 on [0, L] for initial data
/// sin(m pi x / L), zero initial velocity and homogeneous Dirichlet data.
double hyperbolic_mode_solution(double nu, double tau, double length, int m, double t, double x);

}  // namespace heatlab
