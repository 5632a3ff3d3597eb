#include <algorithm>
#include <cmath>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "heatlab/errors.hpp"
#include "heatlab/schemes.hpp"
#include "oracles.hpp"

using namespace heatlab;

namespace {

SchemeParams constant_params(double nu, double dt, double dx) {
    SchemeParams p;
    p.diffusivity = DiffusivityModel::constant(nu);
    p.dt = dt;
    p.dx = dx;
    return p;
}

// dx = 1 so that r = dt.
SchemeParams with_r(double r) { return constant_params(1.0, r, 1.0); }

Field layer(std::vector<double> values, int index = 0) { return Field{std::move(values), index}; }

StepState make_state(std::vector<double> curr, const SchemeParams& p, Boundaries bcs = Boundaries::homogeneous_dirichlet()) {
    return StepState{std::nullopt, layer(std::move(curr)), p, std::move(bcs)};
}

StepState make_state2(std::vector<double> prev, std::vector<double> curr, const SchemeParams& p,
                      Boundaries bcs = Boundaries::homogeneous_dirichlet()) {
    return StepState{layer(std::move(prev), 0), layer(std::move(curr), 1), p, std::move(bcs)};
}

Boundaries dirichlet_both(double c) { return {BoundaryCondition::dirichlet(c), BoundaryCondition::dirichlet(c)}; }

// Applies any scheme for one layer; Saulyev returns the consistent second layer.
Field advance(Scheme s, const StepState& st) {
    switch (s) {
        case Scheme::Explicit: return step_explicit(st);
        case Scheme::Implicit: return step_implicit(st);
        case Scheme::LeapFrog: return step_leapfrog(st);
        case Scheme::CrankNicolson: return step_crank_nicolson(st);
        case Scheme::CnNonlinear: return step_cn_nonlinear(st);
        case Scheme::CrossCn: return step_ccn(st);
        case Scheme::DufortFrankel: return step_dufort_frankel(st);
        case Scheme::Saulyev: return step_saulyev_pair(st).second;
        case Scheme::Hyperbolic: return step_hyperbolic(st);
    }
    return st.curr;
}

constexpr Scheme kAll[] = {Scheme::Explicit,   Scheme::Implicit,      Scheme::LeapFrog,
                           Scheme::CrankNicolson, Scheme::CnNonlinear, Scheme::CrossCn,
                           Scheme::DufortFrankel, Scheme::Saulyev,     Scheme::Hyperbolic};

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
    for (Scheme s : kAll) CHECK(parse_scheme(scheme_name(s)) == s);
    CHECK_FALSE(parse_scheme("euler").has_value());
    CHECK(uses_previous_layer(Scheme::LeapFrog));
    CHECK(uses_previous_layer(Scheme::DufortFrankel));
    CHECK(uses_previous_layer(Scheme::Hyperbolic));
    CHECK_FALSE(uses_previous_layer(Scheme::Saulyev));
}

TEST_CASE("diffusivity models") {
    CHECK(DiffusivityModel::constant(2.0)(123.0) == 2.0);
    CHECK(DiffusivityModel::constant(2.0).nu() == 2.0);
    const auto affine = DiffusivityModel::affine(1.0, 0.5);
    CHECK(affine(2.0) == 2.0);
    CHECK_THROWS_AS(affine(-2.0), ModelViolation);
    CHECK_THROWS_AS(affine.nu(), ContractViolation);
    CHECK_THROWS_AS(DiffusivityModel::general([](double) { return std::nan(""); })(0.0), ModelViolation);
    CHECK(with_r(0.25).diffusion_number() == 0.25);
    CHECK(with_r(0.25).lambda_dufort_frankel() == 0.5);
    CHECK(with_r(0.25).lambda_saulyev() == 0.25);
    auto p = constant_params(2.0, 0.1, 0.05);
    CHECK(p.relaxation_time() == doctest::Approx(0.1));
    p.tau = 0.3;
    CHECK(p.relaxation_time() == 0.3);
}

TEST_CASE("explicit step examples") {
    CHECK(step_explicit(make_state({0, 0, 0, 0}, with_r(0.3))).values == std::vector<double>{0, 0, 0, 0});
    CHECK(step_explicit(make_state({0, 1, 0}, with_r(0.25))).values[1] == 0.5);
    const auto next = step_explicit(make_state({0, 1, 0, 0, 0}, with_r(0.5))).values;
    CHECK(next[1] == 0.0);
    CHECK(next[2] == 0.5);
    CHECK(next[3] == 0.0);
    const auto st = make_state({0, 1, 0}, with_r(0.25));
    CHECK(step_explicit(st).time_index == 1);
}

TEST_CASE("implicit step examples") {
    CHECK(step_implicit(make_state({0, 0, 0}, with_r(1.0))).values == std::vector<double>{0, 0, 0});
    CHECK(step_implicit(make_state({0, 1, 0}, with_r(1.0))).values[1] == doctest::Approx(1.0 / 3.0));
    const auto flat = step_implicit(make_state({2.5, 2.5, 2.5, 2.5}, with_r(7.0), dirichlet_both(2.5))).values;
    for (double v : flat) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("leap-frog step examples") {
    CHECK(step_leapfrog(make_state2({0, 0, 0}, {0, 0, 0}, with_r(0.25))).values == std::vector<double>{0, 0, 0});
    CHECK(step_leapfrog(make_state2({0, 0, 0}, {0, 1, 0}, with_r(0.25))).values[1] == -1.0);
    CHECK_THROWS_AS(step_leapfrog(make_state({0, 1, 0}, with_r(0.25))), ContractViolation);
}

TEST_CASE("Crank-Nicolson step examples") {
    CHECK(step_crank_nicolson(make_state({0, 0, 0}, with_r(1.0))).values == std::vector<double>{0, 0, 0});
    CHECK(std::abs(step_crank_nicolson(make_state({0, 1, 0}, with_r(1.0))).values[1]) < 1e-15);
    const auto flat = step_crank_nicolson(make_state({-1, -1, -1, -1, -1}, with_r(3.0), dirichlet_both(-1))).values;
    for (double v : flat) CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("implicit and CN with flux data match a dense full-system solve") {
    const double nu = 0.7, dx = 0.125, dt = 0.01, phi_l = 0.3, phi_r = -0.2;
    const Boundaries bcs{BoundaryCondition::flux(phi_l), BoundaryCondition::flux(phi_r)};
    std::mt19937_64 rng(5);
    const auto u = random_values(rng, 9);
    const std::size_t n = u.size() - 1;
    const double r = nu * dt / (dx * dx);
    for (double theta : {1.0, 0.5}) {
        testing::DenseMatrix a(n + 1, std::vector<double>(n + 1, 0.0));
        std::vector<double> b(n + 1, 0.0);
        a[0][0] = -3.0;
        a[0][1] = 4.0;
        a[0][2] = -1.0;
        b[0] = 2.0 * dx * phi_l / nu;
        a[n][n] = 3.0;
        a[n][n - 1] = -4.0;
        a[n][n - 2] = 1.0;
        b[n] = 2.0 * dx * phi_r / nu;
        for (std::size_t j = 1; j < n; ++j) {
            a[j][j - 1] = -theta * r;
            a[j][j] = 1.0 + 2.0 * theta * r;
            a[j][j + 1] = -theta * r;
            b[j] = u[j] + (1.0 - theta) * r * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
        }
        const auto expected = testing::dense_solve(a, b);
        const auto st = make_state(u, constant_params(nu, dt, dx), bcs);
        const auto got = theta == 1.0 ? step_implicit(st) : step_crank_nicolson(st);
        CHECK(testing::max_abs_diff(got.values, expected) < 1e-12);
    }
}

TEST_CASE("implicit step with Robin data satisfies the closure") {
    const double nu = 1.3, dx = 0.1;
    const Boundaries bcs{BoundaryCondition::robin(2.0, 0.5, [](double t) { return 1.0 + t; }),
                         BoundaryCondition::robin(1.0, 1.0, [](double) { return -0.4; })};
    const auto st = make_state({0.1, 0.4, 0.2, -0.3, 0.5, 0.0}, constant_params(nu, 0.02, dx), bcs);
    const auto u = step_implicit(st).values;
    const std::size_t n = u.size() - 1;
    const double left_der = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
    const double right_der = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * dx);
    CHECK(2.0 * u[0] + 0.5 * nu * left_der == doctest::Approx(1.02).epsilon(1e-12));
    CHECK(u[n] + nu * right_der == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("nonlinear CN and cross-CN reduce to CN for constant k") {
    std::mt19937_64 rng(17);
    auto u = random_values(rng, 17);
    u.front() = u.back() = 0.0;
    const auto p = constant_params(0.8, 0.003, 1.0 / 16.0);
    const auto cn = step_crank_nicolson(make_state(u, p)).values;
    CHECK(testing::max_abs_diff(step_cn_nonlinear(make_state(u, p)).values, cn) <= 1e-14);
    CHECK(testing::max_abs_diff(step_ccn(make_state(u, p)).values, cn) <= 1e-14);
    auto general = p;
    general.diffusivity = DiffusivityModel::general([](double) { return 0.8; });
    CHECK(testing::max_abs_diff(step_ccn(make_state(u, general)).values, cn) <= 1e-14);
    CHECK(testing::max_abs_diff(step_cn_nonlinear(make_state(u, general)).values, cn) <= 1e-14);
}

TEST_CASE("nonlinear schemes on a single interior node match bisection") {
    const double dx = 0.5, dt = 0.1, u1 = 1.0;
    const double c = dt / (dx * dx);
    auto k = [](double v) { return 1.0 + v; };
    SchemeParams p;
    p.diffusivity = DiffusivityModel::affine(1.0, 1.0);
    p.dt = dt;
    p.dx = dx;

    const double cnn_root = testing::bisect([&](double v) { return v - u1 + c * (k(u1) * u1 + k(v) * v); }, -0.5, 1.5);
    CHECK(step_cn_nonlinear(make_state({0, u1, 0}, p)).values[1] == doctest::Approx(cnn_root).epsilon(1e-10));

    const double ccn_root = testing::bisect([&](double v) { return v - u1 + c * (k(v) * u1 + k(u1) * v); }, -0.5, 1.5);
    CHECK(step_ccn(make_state({0, u1, 0}, p)).values[1] == doctest::Approx(ccn_root).epsilon(1e-10));

    auto general = p;
    general.diffusivity = DiffusivityModel::general(k);
    CHECK(step_ccn(make_state({0, u1, 0}, general)).values[1] == doctest::Approx(ccn_root).epsilon(1e-10));
    CHECK(step_cn_nonlinear(make_state({0, u1, 0}, general)).values[1] == doctest::Approx(cnn_root).epsilon(1e-10));
}

TEST_CASE("nonlinear schemes: zero field and failures") {
    SchemeParams p;
    p.diffusivity = DiffusivityModel::affine(1.0, 0.1);
    p.dt = 0.01;
    p.dx = 0.1;
    CHECK(step_cn_nonlinear(make_state({0, 0, 0, 0}, p)).values == std::vector<double>{0, 0, 0, 0});
    CHECK(step_ccn(make_state({0, 0, 0, 0}, p)).values == std::vector<double>{0, 0, 0, 0});

    p.diffusivity = DiffusivityModel::affine(1.0, -1.0);
    CHECK_THROWS_AS(step_cn_nonlinear(make_state({0, 2, 0}, p)), ModelViolation);

    // Strongly nonlinear k with a huge step: the plain fixed point cannot settle.
    SchemeParams hard;
    hard.diffusivity = DiffusivityModel::general([](double v) { return 1.0 + 50.0 * v * v; });
    hard.dt = 10.0;
    hard.dx = 0.1;
    hard.fixed_point.max_iterations = 5;
    try {
        step_cn_nonlinear(make_state({0, 1, -1, 1, 0}, hard));
        FAIL("expected an iteration failure");
    } catch (const IterationFailure& e) {
        CHECK(e.last_residual() > 1e-12);
    } catch (const ModelViolation&) {
    }
}

TEST_CASE("Dufort-Frankel step examples") {
    CHECK(step_dufort_frankel(make_state2({0, 0, 0}, {0, 0, 0}, with_r(0.3))).values == std::vector<double>{0, 0, 0});
    const auto a = step_dufort_frankel(make_state2({0, 0, 0, 0, 0}, {0, 1, 3, 2, 0}, with_r(0.5))).values;
    const auto b = step_dufort_frankel(make_state2({0, 9, -4, 7, 0}, {0, 1, 3, 2, 0}, with_r(0.5))).values;
    CHECK(a == b);
    CHECK(a[2] == 1.5);
    CHECK(step_dufort_frankel(make_state2({0, 0, 0}, {0, 1, 0}, with_r(2.0))).values[1] == 0.0);
    CHECK(step_dufort_frankel(make_state2({0, 1, 0}, {0, 0, 0}, with_r(2.0))).values[1] == doctest::Approx(-0.6));
    CHECK_THROWS_AS(step_dufort_frankel(make_state({0, 1, 0}, with_r(2.0))), ContractViolation);

    std::optional<Field> prev = layer({0, 0, 0, 0, 0, 0, 0}, 0);
    Field curr = layer({0, 0, 0, 1, 0, 0, 0}, 1);
    for (int n = 0; n < 1000; ++n) {
        Field next = step_dufort_frankel(StepState{prev, curr, with_r(2.0), Boundaries::homogeneous_dirichlet()});
        prev = std::move(curr);
        curr = std::move(next);
        REQUIRE(curr.max_norm() <= 1.0);
    }
}

TEST_CASE("Saulyev pair examples") {
    const auto [z1, z2] = step_saulyev_pair(make_state({0, 0, 0, 0}, with_r(0.7)));
    CHECK(z1.values == std::vector<double>{0, 0, 0, 0});
    CHECK(z2.values == std::vector<double>{0, 0, 0, 0});

    const auto [s1, s2] = step_saulyev_pair(make_state({0, 1, 0}, with_r(1.0)));
    CHECK(s1.values[1] == 0.0);
    CHECK(s2.values[1] == 0.0);
    CHECK(s1.time_index == 1);
    CHECK(s2.time_index == 2);

    // lambda = 1: v_j = (old_{j+1} + v_{j-1}) / 2 going right.
    const std::vector<double> u{0, 4, 8, 2, 6, 0};
    const auto first = step_saulyev_pair(make_state(u, with_r(1.0))).first.values;
    double left = 0.0;
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        left = 0.5 * (u[j + 1] + left);
        CHECK(first[j] == doctest::Approx(left).epsilon(1e-15));
    }

    // General lambda against the stage recurrences written out directly.
    const double lam = 0.6;
    std::vector<double> w1(u.size(), 0.0), w2(u.size(), 0.0);
    for (std::size_t j = 1; j + 1 < u.size(); ++j)
        w1[j] = ((1 - lam) * u[j] + lam * u[j + 1] + lam * w1[j - 1]) / (1 + lam);
    for (std::size_t j = u.size() - 2; j >= 1; --j)
        w2[j] = ((1 - lam) * w1[j] + lam * w1[j - 1] + lam * w2[j + 1]) / (1 + lam);
    const auto [g1, g2] = step_saulyev_pair(make_state(u, with_r(lam)));
    CHECK(testing::max_abs_diff(g1.values, w1) < 1e-14);
    CHECK(testing::max_abs_diff(g2.values, w2) < 1e-14);
}

TEST_CASE("Saulyev start from flux boundaries satisfies both closures") {
    const double dx = 0.1;
    const Boundaries bcs{BoundaryCondition::flux(0.5), BoundaryCondition::flux(-0.25)};
    const auto [f1, f2] = step_saulyev_pair(make_state({1, 2, 0, 3, 1, 2, 0}, constant_params(1.0, 0.004, dx), bcs));
    for (const auto* f : {&f1, &f2}) {
        const auto& u = f->values;
        const std::size_t n = u.size() - 1;
        CHECK((-3 * u[0] + 4 * u[1] - u[2]) / (2 * dx) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK((3 * u[n] - 4 * u[n - 1] + u[n - 2]) / (2 * dx) == doctest::Approx(-0.25).epsilon(1e-12));
    }
    CHECK_THROWS_AS(step_saulyev_pair(make_state({1, 2, 0}, with_r(0.5), bcs)), ContractViolation);
}

TEST_CASE("hyperbolic step and start examples") {
    auto p = constant_params(1.0, 1.0, 1.0);
    p.tau = 1.0;
    CHECK(step_hyperbolic(make_state2({0, 0, 0}, {0, 0, 0}, p)).values == std::vector<double>{0, 0, 0});
    CHECK(std::abs(step_hyperbolic(make_state2({0, 0, 0}, {0, 1, 0}, p)).values[1]) < 1e-15);
    const auto flat = step_hyperbolic(make_state2({3, 3, 3, 3}, {3, 3, 3, 3}, p, dirichlet_both(3))).values;
    for (double v : flat) CHECK(v == doctest::Approx(3.0).epsilon(1e-14));

    CHECK(bootstrap_hyperbolic(layer({0, 0, 0}), p).values == std::vector<double>{0, 0, 0});
    CHECK(bootstrap_hyperbolic(layer({2, 2, 2, 2}), p).values == std::vector<double>{2, 2, 2, 2});
    const auto start = bootstrap_hyperbolic(layer({0, 1, 0}), p);
    CHECK(start.values[1] == 0.0);
    CHECK(start.time_index == 1);
    CHECK(bootstrap_hyperbolic(layer({5, 1, 0}), p, Boundaries::homogeneous_dirichlet()).values[0] == 0.0);

    auto zero_tau = p;
    zero_tau.tau = 0.0;
    CHECK_THROWS_AS(step_hyperbolic(make_state2({0, 0, 0}, {0, 1, 0}, zero_tau)), ContractViolation);
    CHECK_THROWS_AS(step_hyperbolic(make_state({0, 1, 0}, p)), ContractViolation);
}

TEST_CASE("every scheme keeps a compatible constant field") {
    auto p = constant_params(1.0, 0.002, 0.05);
    p.tau = 0.01;
    for (Scheme s : kAll) {
        auto params = p;
        if (s == Scheme::CnNonlinear || s == Scheme::CrossCn) params.diffusivity = DiffusivityModel::affine(1.0, 0.2);
        const std::vector<double> c(12, 1.75);
        const auto out = advance(s, make_state2(c, c, params, dirichlet_both(1.75))).values;
        for (double v : out) CHECK(v == doctest::Approx(1.75).epsilon(1e-12));
    }
}

TEST_CASE("linear schemes are linear in the field") {
    std::mt19937_64 rng(99);
    auto p = constant_params(1.0, 0.001, 0.05);
    p.tau = 0.02;
    const double alpha = 0.7, beta = -1.9;
    for (const Boundaries& bcs : {Boundaries::homogeneous_dirichlet(), Boundaries::homogeneous_flux()}) {
        for (Scheme s : kAll) {
            if (s == Scheme::CnNonlinear || s == Scheme::CrossCn) continue;
            const auto u0 = random_values(rng, 15), u1 = random_values(rng, 15);
            const auto v0 = random_values(rng, 15), v1 = random_values(rng, 15);
            std::vector<double> w0(15), w1(15);
            for (int j = 0; j < 15; ++j) {
                w0[j] = alpha * u0[j] + beta * v0[j];
                w1[j] = alpha * u1[j] + beta * v1[j];
            }
            const auto su = advance(s, make_state2(u0, u1, p, bcs)).values;
            const auto sv = advance(s, make_state2(v0, v1, p, bcs)).values;
            const auto sw = advance(s, make_state2(w0, w1, p, bcs)).values;
            for (int j = 0; j < 15; ++j) CHECK(sw[j] == doctest::Approx(alpha * su[j] + beta * sv[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("explicit step obeys the discrete maximum principle") {
    std::mt19937_64 rng(3);
    for (double r : {0.1, 0.25, 0.5}) {
        for (int trial = 0; trial < 50; ++trial) {
            auto u = random_values(rng, 20);
            const Boundaries bcs = dirichlet_both(u.front());
            u.back() = u.front();
            const auto next = step_explicit(make_state(u, with_r(r), bcs)).values;
            const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
            for (double v : next) {
                CHECK(v >= *lo - 1e-15);
                CHECK(v <= *hi + 1e-15);
            }
        }
    }
}

TEST_CASE("explicit interior sum changes only through the edge terms") {
    std::mt19937_64 rng(8);
    const double r = 0.3;
    const auto u = random_values(rng, 21);
    const auto next = step_explicit(make_state(u, with_r(r), Boundaries::homogeneous_flux())).values;
    double change = 0.0;
    for (std::size_t j = 1; j + 1 < u.size(); ++j) change += next[j] - u[j];
    const std::size_t n = u.size() - 1;
    CHECK(change == doctest::Approx(r * ((u[0] - u[1]) + (u[n] - u[n - 1]))).epsilon(1e-12));
}

TEST_CASE("symmetric schemes preserve mirror symmetry") {
    auto p = constant_params(1.0, 0.001, 0.05);
    p.tau = 0.01;
    std::vector<double> u(17);
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double x = static_cast<double>(j) / 16.0;
        u[j] = x * (1.0 - x) + 0.3 * std::cos(2.0 * M_PI * x);
    }
    for (const Boundaries& bcs : {dirichlet_both(0.3), Boundaries::homogeneous_flux()}) {
        for (Scheme s : {Scheme::Explicit, Scheme::Implicit, Scheme::CrankNicolson, Scheme::LeapFrog,
                         Scheme::DufortFrankel, Scheme::Hyperbolic}) {
            const auto out = advance(s, make_state2(u, u, p, bcs)).values;
            for (std::size_t j = 0; j < out.size(); ++j)
                CHECK(out[j] == doctest::Approx(out[out.size() - 1 - j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("Saulyev pair asymmetry shrinks at least quadratically in the step") {
    std::vector<double> u(33);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(M_PI * static_cast<double>(j) / 32.0);
    auto asymmetry = [&](double dt) {
        const auto out = step_saulyev_pair(make_state(u, constant_params(1.0, dt, 1.0 / 32.0))).second.values;
        double m = 0.0;
        for (std::size_t j = 0; j < out.size(); ++j) m = std::max(m, std::abs(out[j] - out[out.size() - 1 - j]));
        return m;
    };
    double prev = asymmetry(1e-3);
    CHECK(prev > 0.0);
    for (double dt : {5e-4, 2.5e-4, 1.25e-4}) {
        const double cur = asymmetry(dt);
        MESSAGE("dt=" << dt << " asymmetry=" << cur << " ratio=" << prev / cur);
        CHECK(prev / cur > 3.5);
        prev = cur;
    }
}
