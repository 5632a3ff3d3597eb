#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>

#include "heatlab/grid.hpp"

namespace heatlab {

enum class Scheme {
    Explicit,
    Implicit,
    LeapFrog,
    CrankNicolson,
    CnNonlinear,
    CrossCn,
    DufortFrankel,
    Saulyev,
    Hyperbolic,
};

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

/// Schemes whose update reads layer n-1 as well as layer n.
bool uses_previous_layer(Scheme scheme);

/// Diffusion coefficient k(u): constant nu, affine a + b*u, or an arbitrary callable.
class DiffusivityModel {
public:
    enum class Kind { Constant, Affine, General };

    static DiffusivityModel constant(double nu);
    static DiffusivityModel affine(double a, double b);
    static DiffusivityModel general(std::function<double(double)> k);

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ == Kind::Constant; }

    /// Evaluates k(u); throws ModelViolation unless the result is finite and > 0.
    double operator()(double u) const;

    /// Constant case only; ContractViolation otherwise.
    double nu() const;
    double affine_a() const { return a_; }
    double affine_b() const { return b_; }

private:
    DiffusivityModel(Kind kind, double a, double b, std::function<double(double)> k)
        : kind_(kind), a_(a), b_(b), general_(std::move(k)) {}

    Kind kind_;
    double a_;
    double b_;
    std::function<double(double)> general_;
};

struct FixedPointOptions {
    double tolerance = 1e-12;  // max-norm change between iterates
    int max_iterations = 50;
    double damping = 1.0;      // 1 = plain fixed point
};

struct SchemeParams {
    DiffusivityModel diffusivity = DiffusivityModel::constant(1.0);
    double dt = 0.0;
    double dx = 0.0;
    std::optional<double> tau;  // relaxation time; unset means nu*dx
    FixedPointOptions fixed_point;

    /// r = nu*dt/dx^2 (constant diffusivity only).
    double diffusion_number() const;
    /// Dufort-Frankel lambda = 2r.
    double lambda_dufort_frankel() const { return 2.0 * diffusion_number(); }
    /// Saulyev lambda = r.
    double lambda_saulyev() const { return diffusion_number(); }
    double relaxation_time() const;
};

struct StepState {
    std::optional<Field> prev;
    Field curr;
    SchemeParams params;
    Boundaries bcs;
};

Field step_explicit(const StepState& state);
Field step_implicit(const StepState& state);
Field step_leapfrog(const StepState& state);
Field step_crank_nicolson(const StepState& state);
Field step_cn_nonlinear(const StepState& state);
Field step_ccn(const StepState& state);
Field step_dufort_frankel(const StepState& state);

/// Rightward sweep to layer n+1, then leftward sweep to layer n+2.
/// Only the second layer is consistent with the heat equation.
std::pair<Field, Field> step_saulyev_pair(const StepState& state);

Field step_hyperbolic(const StepState& state);

/// Second-order Taylor start for the hyperbolic recursion assuming u_t(0) = 0.
/// The two-argument form keeps the initial endpoint values.
Field bootstrap_hyperbolic(const Field& initial, const SchemeParams& params);
Field bootstrap_hyperbolic(const Field& initial, const SchemeParams& params, const Boundaries& bcs);

}  // namespace heatlab
