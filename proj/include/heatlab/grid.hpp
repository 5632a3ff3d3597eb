#pragma once

#include <functional>
#include <span>
#include <vector>

namespace heatlab {

using SpaceFunction = std::function<double(double)>;
using TimeFunction = std::function<double(double)>;

/// Uniform mesh x_j = j*dx on [0, length], j = 0..num_cells.
struct Grid1D {
    double length = 0.0;
    int num_cells = 0;
    double dx = 0.0;
    std::vector<double> nodes;

    int num_nodes() const { return num_cells + 1; }
};

/// Throws std::invalid_argument for length <= 0 or num_cells < 2.
Grid1D build_uniform_grid(double length, int num_cells);

/// Uniform time layers. t^n is always n*dt, never a running sum.
class TimeGrid {
public:
    TimeGrid(double dt, int num_steps);

    double dt() const { return dt_; }
    int num_steps() const { return num_steps_; }
    double time(int n) const { return static_cast<double>(n) * dt_; }

private:
    double dt_;
    int num_steps_;
};

/// One time layer of nodal values, boundary nodes included.
struct Field {
    std::vector<double> values;
    int time_index = 0;

    std::size_t size() const { return values.size(); }
    double max_norm() const;
    bool all_finite() const;
};

Field sample_initial(const SpaceFunction& u0, const Grid1D& grid);

/// Field that is 1 at `node` and 0 elsewhere.
Field discrete_dirac(const Grid1D& grid, int node);

enum class Side { Left, Right };
enum class BcKind { Dirichlet, Flux, Robin };

/// Boundary value as an affine function of the two nearest interior values:
/// u_boundary = offset + near * u_adjacent + far * u_next.
struct LinearClosure {
    double offset = 0.0;
    double near = 0.0;
    double far = 0.0;

    double apply(double u_near, double u_far) const { return offset + near * u_near + far * u_far; }
};

/// Dirichlet: u = phi(t). Flux: nu*u_x = phi(t). Robin: a*u + b*nu*u_x = phi(t).
class BoundaryCondition {
public:
    static BoundaryCondition dirichlet(TimeFunction phi);
    static BoundaryCondition dirichlet(double value);
    static BoundaryCondition flux(TimeFunction phi);
    static BoundaryCondition flux(double value);
    static BoundaryCondition robin(double a, double b, TimeFunction phi);

    BcKind kind() const { return kind_; }
    double coeff_a() const { return a_; }
    double coeff_b() const { return b_; }
    double forcing(double t) const { return phi_(t); }

private:
    BoundaryCondition(BcKind kind, double a, double b, TimeFunction phi);

    BcKind kind_;
    double a_;
    double b_;
    TimeFunction phi_;
};

struct Boundaries {
    BoundaryCondition left;
    BoundaryCondition right;

    static Boundaries homogeneous_dirichlet();
    static Boundaries homogeneous_flux();
};

/// Closure coefficients at time t using the second-order one-sided
/// derivative (-3u_0 + 4u_1 - u_2)/(2dx), mirrored on the right.
LinearClosure closure_coefficients(const BoundaryCondition& bc, Side side, double t, double nu, double dx);

/// Boundary value u_0 (Left) or u_N (Right) at t_next, from the interior
/// values already written into `values` for that layer.
double close_boundary(const BoundaryCondition& bc, Side side, std::span<const double> values,
                      double t_next, double nu, double dx);

}  // namespace heatlab
