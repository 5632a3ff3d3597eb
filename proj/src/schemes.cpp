#include "heatlab/schemes.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "heatlab/errors.hpp"
#include "heatlab/tridiag.hpp"

namespace heatlab {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 9> kSchemeNames{{
    {Scheme::Explicit, "explicit"},
    {Scheme::Implicit, "implicit"},
    {Scheme::LeapFrog, "leapfrog"},
    {Scheme::CrankNicolson, "cn"},
    {Scheme::CnNonlinear, "cn_nonlinear"},
    {Scheme::CrossCn, "ccn"},
    {Scheme::DufortFrankel, "dufort_frankel"},
    {Scheme::Saulyev, "saulyev"},
    {Scheme::Hyperbolic, "hyperbolic"},
}};

double second_difference(const std::vector<double>& u, std::size_t j) {
    return u[j - 1] - 2.0 * u[j] + u[j + 1];
}

void check_layer(const Field& f) {
    if (f.values.size() < 3) {
        throw ContractViolation("a layer needs at least 3 nodes");
    }
}

void check_params(const SchemeParams& p) {
    if (!(p.dt > 0.0) || !(p.dx > 0.0)) {
        throw std::invalid_argument("dt and dx must be positive");
    }
}

const Field& require_prev(const StepState& state) {
    if (!state.prev) {
        throw ContractViolation("scheme needs the previous layer");
    }
    if (state.prev->values.size() != state.curr.values.size()) {
        throw ContractViolation("previous and current layers differ in size");
    }
    if (state.prev->time_index != state.curr.time_index - 1) {
        throw ContractViolation("previous layer is not one step behind the current layer");
    }
    return *state.prev;
}

double time_of(int index, double dt) { return static_cast<double>(index) * dt; }

// Diffusivity used inside flux/Robin closures: nu for constant models,
// otherwise k frozen at the old-layer boundary value.
double closure_nu(const SchemeParams& p, const Field& curr, Side side) {
    if (p.diffusivity.is_constant()) return p.diffusivity.nu();
    const double u = side == Side::Left ? curr.values.front() : curr.values.back();
    return p.diffusivity(u);
}

struct Closures {
    LinearClosure left;
    LinearClosure right;
};

Closures closures_at(const StepState& state, double t) {
    const auto& p = state.params;
    return {closure_coefficients(state.bcs.left, Side::Left, t, closure_nu(p, state.curr, Side::Left), p.dx),
            closure_coefficients(state.bcs.right, Side::Right, t, closure_nu(p, state.curr, Side::Right), p.dx)};
}

// Writes both endpoints once the interior of `u` is final. With N = 2 the
// far node of each closure is the opposite endpoint, so the pair is coupled.
void apply_closures(std::vector<double>& u, const Closures& c) {
    const std::size_t n = u.size() - 1;
    if (n >= 3) {
        u[0] = c.left.apply(u[1], u[2]);
        u[n] = c.right.apply(u[n - 1], u[n - 2]);
        return;
    }
    const double left_base = c.left.offset + c.left.near * u[1];
    const double right_base = c.right.offset + c.right.near * u[1];
    const double det = 1.0 - c.left.far * c.right.far;
    if (std::abs(det) < 1e-300) {
        throw SingularSystemError("coupled boundary closures are singular");
    }
    u[0] = (left_base + c.left.far * right_base) / det;
    u[2] = right_base + c.right.far * u[0];
}

void close_layer(Field& next, const StepState& state) {
    apply_closures(next.values, closures_at(state, time_of(next.time_index, state.params.dt)));
}

// Rows j = 1..N-1 of a three-point implicit relation, stored at index j-1.
struct InteriorRows {
    std::vector<double> lower, diag, upper, rhs;

    explicit InteriorRows(std::size_t interior)
        : lower(interior), diag(interior), upper(interior), rhs(interior) {}
};

// Assembles the full (N+1)-node system with closure rows and solves it. A
// closure's far-node term is eliminated with the adjacent interior row so the
// matrix stays tridiagonal.
std::vector<double> solve_with_closures(const InteriorRows& rows, const Closures& c) {
    const std::size_t interior = rows.diag.size();
    const std::size_t m = interior + 2;
    TridiagonalSystem sys;
    sys.lower.assign(m - 1, 0.0);
    sys.diag.assign(m, 0.0);
    sys.upper.assign(m - 1, 0.0);
    sys.rhs.assign(m, 0.0);

    for (std::size_t k = 0; k < interior; ++k) {
        const std::size_t row = k + 1;
        sys.lower[row - 1] = rows.lower[k];
        sys.diag[row] = rows.diag[k];
        sys.upper[row] = rows.upper[k];
        sys.rhs[row] = rows.rhs[k];
    }

    // Left: u0 - near*u1 - far*u2 = offset, u2 eliminated via row 1.
    {
        double d0 = 1.0;
        double u0 = -c.left.near;
        double r0 = c.left.offset;
        if (c.left.far != 0.0) {
            const double up = rows.upper.front();
            if (up == 0.0) throw SingularSystemError("cannot fold left closure into the first interior row");
            const double w = c.left.far / up;
            d0 += w * rows.lower.front();
            u0 += w * rows.diag.front();
            r0 += w * rows.rhs.front();
        }
        sys.diag[0] = d0;
        sys.upper[0] = u0;
        sys.rhs[0] = r0;
    }
    // Right: uN - near*u_{N-1} - far*u_{N-2} = offset, u_{N-2} eliminated via row N-1.
    {
        double dn = 1.0;
        double ln = -c.right.near;
        double rn = c.right.offset;
        if (c.right.far != 0.0) {
            const double lo = rows.lower.back();
            if (lo == 0.0) throw SingularSystemError("cannot fold right closure into the last interior row");
            const double w = c.right.far / lo;
            dn += w * rows.upper.back();
            ln += w * rows.diag.back();
            rn += w * rows.rhs.back();
        }
        sys.diag[m - 1] = dn;
        sys.lower[m - 2] = ln;
        sys.rhs[m - 1] = rn;
    }
    return thomas_solve(sys);
}

Field next_layer_like(const Field& curr) {
    Field next;
    next.values.assign(curr.values.size(), 0.0);
    next.time_index = curr.time_index + 1;
    return next;
}

// rows: -rho*u_{j-1} + (1+2rho)*u_j - rho*u_{j+1}
void fill_symmetric(InteriorRows& rows, std::size_t k, double rho) {
    rows.lower[k] = -rho;
    rows.diag[k] = 1.0 + 2.0 * rho;
    rows.upper[k] = -rho;
}

template <typename Assemble>
Field fixed_point_solve(const StepState& state, const Closures& closures, Assemble&& assemble) {
    const auto& opts = state.params.fixed_point;
    const auto& u = state.curr.values;
    std::vector<double> iterate = u;
    double change = 0.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const InteriorRows rows = assemble(iterate);
        const std::vector<double> solved = solve_with_closures(rows, closures);
        change = 0.0;
        for (std::size_t j = 0; j < iterate.size(); ++j) {
            const double updated = (1.0 - opts.damping) * iterate[j] + opts.damping * solved[j];
            change = std::max(change, std::abs(updated - iterate[j]));
            iterate[j] = updated;
        }
        if (!std::isfinite(change)) break;
        if (change <= opts.tolerance) {
            Field next = next_layer_like(state.curr);
            next.values = std::move(iterate);
            return next;
        }
    }
    throw IterationFailure("nonlinear fixed-point iteration did not converge", change);
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
    for (const auto& [s, name] : kSchemeNames) {
        if (s == scheme) return name;
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (const auto& [s, n] : kSchemeNames) {
        if (n == name) return s;
    }
    return std::nullopt;
}

bool uses_previous_layer(Scheme scheme) {
    return scheme == Scheme::LeapFrog || scheme == Scheme::DufortFrankel || scheme == Scheme::Hyperbolic;
}

DiffusivityModel DiffusivityModel::constant(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw std::invalid_argument("diffusivity must be positive");
    return {Kind::Constant, nu, 0.0, {}};
}

DiffusivityModel DiffusivityModel::affine(double a, double b) {
    return {Kind::Affine, a, b, {}};
}

DiffusivityModel DiffusivityModel::general(std::function<double(double)> k) {
    if (!k) throw std::invalid_argument("general diffusivity must be callable");
    return {Kind::General, 0.0, 0.0, std::move(k)};
}

double DiffusivityModel::operator()(double u) const {
    double k = 0.0;
    switch (kind_) {
        case Kind::Constant: k = a_; break;
        case Kind::Affine: k = a_ + b_ * u; break;
        case Kind::General: k = general_(u); break;
    }
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw ModelViolation("diffusivity k(" + std::to_string(u) + ") = " + std::to_string(k) + " is not positive");
    }
    return k;
}

double DiffusivityModel::nu() const {
    if (kind_ != Kind::Constant) throw ContractViolation("scheme requires constant diffusivity");
    return a_;
}

double SchemeParams::diffusion_number() const {
    return diffusivity.nu() * (dt / (dx * dx));
}

double SchemeParams::relaxation_time() const {
    if (tau) return *tau;
    return diffusivity.nu() * dx;
}

Field step_explicit(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const auto& u = state.curr.values;
    const double coef = p.dt / (p.dx * p.dx);
    Field next = next_layer_like(state.curr);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        next.values[j] = u[j] + p.diffusivity(u[j]) * coef * second_difference(u, j);
    }
    close_layer(next, state);
    return next;
}

Field step_implicit(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const double r = p.diffusion_number();
    const auto& u = state.curr.values;
    InteriorRows rows(u.size() - 2);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        fill_symmetric(rows, j - 1, r);
        rows.rhs[j - 1] = u[j];
    }
    Field next = next_layer_like(state.curr);
    next.values = solve_with_closures(rows, closures_at(state, time_of(next.time_index, p.dt)));
    return next;
}

Field step_leapfrog(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const Field& prev = require_prev(state);
    const double r = p.diffusion_number();
    const auto& u = state.curr.values;
    Field next = next_layer_like(state.curr);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        next.values[j] = prev.values[j] + 2.0 * r * second_difference(u, j);
    }
    close_layer(next, state);
    return next;
}

Field step_crank_nicolson(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const double rho = p.diffusion_number() * 0.5;
    const auto& u = state.curr.values;
    InteriorRows rows(u.size() - 2);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        fill_symmetric(rows, j - 1, rho);
        rows.rhs[j - 1] = u[j] + rho * second_difference(u, j);
    }
    Field next = next_layer_like(state.curr);
    next.values = solve_with_closures(rows, closures_at(state, time_of(next.time_index, p.dt)));
    return next;
}

Field step_cn_nonlinear(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const auto& u = state.curr.values;
    const double coef = p.dt / (p.dx * p.dx);
    std::vector<double> explicit_half(u.size(), 0.0);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        explicit_half[j] = u[j] + p.diffusivity(u[j]) * coef * 0.5 * second_difference(u, j);
    }
    const Closures closures = closures_at(state, time_of(state.curr.time_index + 1, p.dt));
    return fixed_point_solve(state, closures, [&](const std::vector<double>& w) {
        InteriorRows rows(u.size() - 2);
        for (std::size_t j = 1; j + 1 < u.size(); ++j) {
            fill_symmetric(rows, j - 1, p.diffusivity(w[j]) * coef * 0.5);
            rows.rhs[j - 1] = explicit_half[j];
        }
        return rows;
    });
}

Field step_ccn(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const auto& u = state.curr.values;
    const double coef = p.dt / (p.dx * p.dx);
    const Closures closures = closures_at(state, time_of(state.curr.time_index + 1, p.dt));
    const auto kind = p.diffusivity.kind();

    if (kind != DiffusivityModel::Kind::General) {
        // k(u^{n+1}) = a + b*u^{n+1} multiplies the old-layer difference, so
        // the relation stays linear in the new layer.
        const double a = kind == DiffusivityModel::Kind::Constant ? p.diffusivity.nu() : p.diffusivity.affine_a();
        const double b = kind == DiffusivityModel::Kind::Constant ? 0.0 : p.diffusivity.affine_b();
        InteriorRows rows(u.size() - 2);
        for (std::size_t j = 1; j + 1 < u.size(); ++j) {
            const double sigma = p.diffusivity(u[j]) * coef * 0.5;
            const double lap = second_difference(u, j);
            fill_symmetric(rows, j - 1, sigma);
            rows.diag[j - 1] -= b * coef * 0.5 * lap;
            rows.rhs[j - 1] = u[j] + a * coef * 0.5 * lap;
        }
        Field next = next_layer_like(state.curr);
        next.values = solve_with_closures(rows, closures);
        return next;
    }

    return fixed_point_solve(state, closures, [&](const std::vector<double>& w) {
        InteriorRows rows(u.size() - 2);
        for (std::size_t j = 1; j + 1 < u.size(); ++j) {
            fill_symmetric(rows, j - 1, p.diffusivity(u[j]) * coef * 0.5);
            rows.rhs[j - 1] = u[j] + p.diffusivity(w[j]) * coef * 0.5 * second_difference(u, j);
        }
        return rows;
    });
}

Field step_dufort_frankel(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const Field& prev = require_prev(state);
    const double lambda = p.lambda_dufort_frankel();
    const double keep = (1.0 - lambda) / (1.0 + lambda);
    const double spread = lambda / (1.0 + lambda);
    const auto& u = state.curr.values;
    Field next = next_layer_like(state.curr);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        next.values[j] = keep * prev.values[j] + spread * (u[j + 1] + u[j - 1]);
    }
    close_layer(next, state);
    return next;
}

namespace {

// One Saulyev stage. `rightward` sweeps j = 1..N-1 from the left boundary,
// otherwise j = N-1..1 from the right. The recurrence in sweep coordinates k is
// v_k = keep*old_k + spread*old_{k+1} + spread*v_{k-1}.
std::vector<double> saulyev_stage(const std::vector<double>& old, double lambda, bool rightward,
                                  const LinearClosure& start, const LinearClosure& finish, bool start_is_dirichlet) {
    const int n = static_cast<int>(old.size()) - 1;
    auto at = [&](int k) { return static_cast<std::size_t>(rightward ? k : n - k); };
    const double keep = (1.0 - lambda) / (1.0 + lambda);
    const double spread = lambda / (1.0 + lambda);

    std::vector<double> next(old.size(), 0.0);
    if (start_is_dirichlet) {
        next[at(0)] = start.offset;
    } else {
        if (n < 3) throw ContractViolation("Saulyev sweep from a flux/Robin boundary needs N >= 3");
        // v_1 = q + spread*v_0, v_2 = p + spread*v_1, v_0 = offset + near*v_1 + far*v_2.
        const double q = keep * old[at(1)] + spread * old[at(2)];
        const double p = keep * old[at(2)] + spread * old[at(3)];
        const double g = start.near + start.far * spread;
        const double det = 1.0 - g * spread;
        if (std::abs(det) < 1e-300) throw SingularSystemError("Saulyev start-up system is singular");
        next[at(0)] = (start.offset + start.far * p + g * q) / det;
    }
    for (int k = 1; k < n; ++k) {
        next[at(k)] = keep * old[at(k)] + spread * old[at(k + 1)] + spread * next[at(k - 1)];
    }
    next[at(n)] = finish.apply(next[at(n - 1)], next[at(n - 2)]);
    return next;
}

}  // namespace

std::pair<Field, Field> step_saulyev_pair(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const double lambda = p.lambda_saulyev();

    Field first = next_layer_like(state.curr);
    const Closures c1 = closures_at(state, time_of(first.time_index, p.dt));
    first.values = saulyev_stage(state.curr.values, lambda, true, c1.left, c1.right,
                                 state.bcs.left.kind() == BcKind::Dirichlet);

    Field second = next_layer_like(first);
    const Closures c2 = closures_at(state, time_of(second.time_index, p.dt));
    second.values = saulyev_stage(first.values, lambda, false, c2.right, c2.left,
                                  state.bcs.right.kind() == BcKind::Dirichlet);
    return {std::move(first), std::move(second)};
}

Field step_hyperbolic(const StepState& state) {
    const auto& p = state.params;
    check_params(p);
    check_layer(state.curr);
    const Field& prev = require_prev(state);
    const double tau = p.relaxation_time();
    if (!(tau > 0.0)) throw ContractViolation("hyperbolic scheme needs tau > 0; use the explicit scheme for tau = 0");
    const double nu = p.diffusivity.nu();
    const double inertia = tau / (p.dt * p.dt);
    const double damping = 1.0 / (2.0 * p.dt);
    const double a = inertia + damping;
    const double b = inertia - damping;
    const double diffusion = nu / (p.dx * p.dx);
    const auto& u = state.curr.values;
    Field next = next_layer_like(state.curr);
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        next.values[j] = (2.0 * inertia * u[j] - b * prev.values[j] + diffusion * second_difference(u, j)) / a;
    }
    close_layer(next, state);
    return next;
}

namespace {

Field taylor_start(const Field& initial, const SchemeParams& p) {
    check_params(p);
    check_layer(initial);
    const double tau = p.relaxation_time();
    if (!(tau > 0.0)) throw ContractViolation("hyperbolic start needs tau > 0");
    const double coef = p.dt * p.dt / (2.0 * tau) * p.diffusivity.nu() / (p.dx * p.dx);
    Field next = initial;
    next.time_index = initial.time_index + 1;
    for (std::size_t j = 1; j + 1 < initial.values.size(); ++j) {
        next.values[j] = initial.values[j] + coef * second_difference(initial.values, j);
    }
    return next;
}

}  // namespace

Field bootstrap_hyperbolic(const Field& initial, const SchemeParams& params) {
    return taylor_start(initial, params);
}

Field bootstrap_hyperbolic(const Field& initial, const SchemeParams& params, const Boundaries& bcs) {
    Field next = taylor_start(initial, params);
    StepState state{std::nullopt, initial, params, bcs};
    close_layer(next, state);
    return next;
}

}  // namespace heatlab
