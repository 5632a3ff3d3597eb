#include "heatlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace heatlab {

Grid1D build_uniform_grid(double length, int num_cells) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("grid length must be positive and finite");
    }
    if (num_cells < 2) {
        throw std::invalid_argument("grid needs at least 2 cells, got " + std::to_string(num_cells));
    }
    Grid1D grid;
    grid.length = length;
    grid.num_cells = num_cells;
    grid.dx = length / num_cells;
    grid.nodes.resize(static_cast<std::size_t>(num_cells) + 1);
    for (int j = 0; j <= num_cells; ++j) {
        grid.nodes[j] = length * static_cast<double>(j) / num_cells;
    }
    return grid;
}

TimeGrid::TimeGrid(double dt, int num_steps) : dt_(dt), num_steps_(num_steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("time step must be positive and finite");
    }
    if (num_steps < 0) {
        throw std::invalid_argument("number of steps must be non-negative");
    }
}

double Field::max_norm() const {
    double m = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool Field::all_finite() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

Field sample_initial(const SpaceFunction& u0, const Grid1D& grid) {
    Field field;
    field.values.reserve(grid.nodes.size());
    for (double x : grid.nodes) {
        const double v = u0(x);
        if (!std::isfinite(v)) {
            throw std::invalid_argument("initial profile is not finite at x = " + std::to_string(x));
        }
        field.values.push_back(v);
    }
    return field;
}

Field discrete_dirac(const Grid1D& grid, int node) {
    if (node < 0 || node > grid.num_cells) {
        throw std::invalid_argument("dirac node outside the grid");
    }
    Field field;
    field.values.assign(grid.nodes.size(), 0.0);
    field.values[node] = 1.0;
    return field;
}

BoundaryCondition::BoundaryCondition(BcKind kind, double a, double b, TimeFunction phi)
    : kind_(kind), a_(a), b_(b), phi_(std::move(phi)) {
    if (!phi_) throw std::invalid_argument("boundary forcing must be callable");
}

BoundaryCondition BoundaryCondition::dirichlet(TimeFunction phi) {
    return {BcKind::Dirichlet, 1.0, 0.0, std::move(phi)};
}

BoundaryCondition BoundaryCondition::dirichlet(double value) {
    return dirichlet([value](double) { return value; });
}

BoundaryCondition BoundaryCondition::flux(TimeFunction phi) {
    return {BcKind::Flux, 0.0, 1.0, std::move(phi)};
}

BoundaryCondition BoundaryCondition::flux(double value) {
    return flux([value](double) { return value; });
}

BoundaryCondition BoundaryCondition::robin(double a, double b, TimeFunction phi) {
    if (a == 0.0 && b == 0.0) {
        throw std::invalid_argument("Robin condition needs (a, b) != (0, 0)");
    }
    return {BcKind::Robin, a, b, std::move(phi)};
}

Boundaries Boundaries::homogeneous_dirichlet() {
    return {BoundaryCondition::dirichlet(0.0), BoundaryCondition::dirichlet(0.0)};
}

Boundaries Boundaries::homogeneous_flux() {
    return {BoundaryCondition::flux(0.0), BoundaryCondition::flux(0.0)};
}

LinearClosure closure_coefficients(const BoundaryCondition& bc, Side side, double t, double nu, double dx) {
    const double phi = bc.forcing(t);
    if (bc.kind() == BcKind::Dirichlet) {
        return {phi, 0.0, 0.0};
    }
    // a*u_b + beta*(∓3u_b ± 4u_1 ∓ u_2) = phi with beta = b*nu/(2dx)
    const double beta = bc.coeff_b() * nu / (2.0 * dx);
    const double a = bc.coeff_a();
    const double sign = side == Side::Left ? -1.0 : 1.0;
    const double pivot = a + sign * 3.0 * beta;
    if (std::abs(pivot) <= 1e-14 * (std::abs(a) + 3.0 * std::abs(beta))) {
        throw std::invalid_argument("degenerate Robin closure: a and the one-sided derivative weight cancel");
    }
    return {phi / pivot, sign * 4.0 * beta / pivot, -sign * beta / pivot};
}

double close_boundary(const BoundaryCondition& bc, Side side, std::span<const double> values,
                      double t_next, double nu, double dx) {
    if (bc.kind() == BcKind::Dirichlet) {
        return bc.forcing(t_next);
    }
    if (values.size() < 3) {
        throw std::invalid_argument("flux/Robin closure needs at least 3 nodes");
    }
    const LinearClosure c = closure_coefficients(bc, side, t_next, nu, dx);
    const std::size_t n = values.size() - 1;
    if (side == Side::Left) return c.apply(values[1], values[2]);
    return c.apply(values[n - 1], values[n - 2]);
}

}  // namespace heatlab
