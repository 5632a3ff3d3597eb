#include "heatlab/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "heatlab/analysis.hpp"
#include "heatlab/errors.hpp"
#include "heatlab/reference.hpp"
#include "heatlab/simulation.hpp"
#include "json.hpp"

namespace heatlab::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_real(std::string_view text, std::string_view what) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

template <typename Int>
Int parse_integer(std::string_view text, std::string_view what) {
    text = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

BoundaryCondition parse_boundary(std::string_view spec) {
    const auto parts = split(spec, ':');
    const auto kind = trim(parts[0]);
    if (kind == "dirichlet" && parts.size() == 2) return BoundaryCondition::dirichlet(parse_real(parts[1], "dirichlet value"));
    if (kind == "flux" && parts.size() == 2) return BoundaryCondition::flux(parse_real(parts[1], "flux value"));
    if (kind == "robin" && parts.size() == 4) {
        const double a = parse_real(parts[1], "robin a");
        const double b = parse_real(parts[2], "robin b");
        const double phi = parse_real(parts[3], "robin value");
        if (a == 0.0 && b == 0.0) throw ConfigError("robin boundary needs (a, b) != (0, 0)");
        return BoundaryCondition::robin(a, b, [phi](double) { return phi; });
    }
    throw ConfigError("invalid boundary spec '" + std::string(spec) + "'");
}

bool is_homogeneous_dirichlet(std::string_view spec) {
    const auto parts = split(spec, ':');
    return parts.size() == 2 && trim(parts[0]) == "dirichlet" && parse_real(parts[1], "dirichlet value") == 0.0;
}

DiffusivityModel parse_diffusivity(const ExperimentConfig& c) {
    const auto parts = split(c.diffusivity, ':');
    if (parts.size() == 1 && trim(parts[0]) == "constant") {
        if (!(c.nu > 0.0)) throw ConfigError("nu must be positive");
        return DiffusivityModel::constant(c.nu);
    }
    if (parts.size() == 3 && trim(parts[0]) == "affine") {
        return DiffusivityModel::affine(parse_real(parts[1], "affine a"), parse_real(parts[2], "affine b"));
    }
    throw ConfigError("invalid diffusivity '" + c.diffusivity + "'");
}

struct SineProfile {
    int m = 1;
    double amplitude = 1.0;
};

std::optional<SineProfile> sine_profile(std::string_view initial) {
    const auto parts = split(initial, ':');
    if (trim(parts[0]) != "sine") return std::nullopt;
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("sine profile is sine:m or sine:m:amplitude");
    SineProfile p;
    p.m = parse_integer<int>(parts[1], "sine mode");
    if (p.m < 1) throw ConfigError("sine mode must be >= 1");
    if (parts.size() == 3) p.amplitude = parse_real(parts[2], "sine amplitude");
    return p;
}

Field read_custom_profile(const std::string& path, const Grid1D& grid) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open initial profile file '" + path + "'");
    Field field;
    std::string line;
    std::size_t j = 0;
    while (std::getline(in, line)) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::istringstream row{std::string(body)};
        std::string xs, us;
        if (!(row >> xs >> us)) throw ConfigError("profile line needs two columns: '" + line + "'");
        if (j >= grid.nodes.size()) throw ConfigError("profile has more samples than grid nodes");
        const double x = parse_real(xs, "profile x");
        if (std::abs(x - grid.nodes[j]) > 1e-12 * std::max(1.0, grid.length)) {
            throw ConfigError("profile sample " + std::to_string(j) + " is not at grid node x = " +
                              format_real(grid.nodes[j]));
        }
        field.values.push_back(parse_real(us, "profile u"));
        ++j;
    }
    if (j != grid.nodes.size()) throw ConfigError("profile has fewer samples than grid nodes");
    return field;
}

Field make_initial(const ExperimentConfig& c, const Grid1D& grid) {
    const std::string_view spec = c.initial;
    const auto parts = split(spec, ':');
    const auto name = trim(parts[0]);
    if (name == "dirac") {
        int node = grid.num_cells / 2;
        if (parts.size() == 2) node = parse_integer<int>(parts[1], "dirac node");
        if (parts.size() > 2 || node < 0 || node > grid.num_cells) throw ConfigError("invalid dirac node");
        return discrete_dirac(grid, node);
    }
    if (auto sine = sine_profile(spec)) {
        const double k = sine->m * std::numbers::pi / grid.length;
        const double a = sine->amplitude;
        Field f = sample_initial([k, a](double x) { return a * std::sin(k * x); }, grid);
        f.values.front() = 0.0;
        f.values.back() = 0.0;
        return f;
    }
    if (name == "zero") return sample_initial([](double) { return 0.0; }, grid);
    if (name == "constant" && parts.size() == 2) {
        const double v = parse_real(parts[1], "constant value");
        return sample_initial([v](double) { return v; }, grid);
    }
    if (name == "nyquist") {
        Field f;
        f.values.assign(grid.nodes.size(), 0.0);
        for (int j = 1; j < grid.num_cells; ++j) f.values[j] = (j % 2 == 0) ? 1.0 : -1.0;
        return f;
    }
    if (name == "random") {
        std::mt19937_64 rng(c.seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        Field f;
        f.values.assign(grid.nodes.size(), 0.0);
        for (int j = 1; j < grid.num_cells; ++j) f.values[j] = dist(rng);
        return f;
    }
    if (name == "custom" && parts.size() >= 2) {
        return read_custom_profile(std::string(spec.substr(spec.find(':') + 1)), grid);
    }
    throw ConfigError("unknown initial profile '" + c.initial + "'");
}

double resolve_tau(const ExperimentConfig& c, double reference_nu, double dx) {
    switch (c.tau_rule) {
        case TauRule::Value: return c.tau_value;
        case TauRule::NuDx: return reference_nu * dx;
        case TauRule::DxOverCs:
            if (!c.cs || !(*c.cs > 0.0)) throw ConfigError("tau = dx_over_cs needs a positive cs");
            return dx / *c.cs;
    }
    return 0.0;
}

double reference_nu(const DiffusivityModel& model) {
    return model.is_constant() ? model.nu() : model.affine_a();
}

void write_row(std::ostream& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& cell : cells) {
        if (!first) out << ',';
        out << cell;
        first = false;
    }
    out << '\n';
}

int source_node(const Field& initial) {
    int best = 0;
    double best_abs = -1.0;
    for (std::size_t j = 0; j < initial.values.size(); ++j) {
        if (std::abs(initial.values[j]) > best_abs) {
            best_abs = std::abs(initial.values[j]);
            best = static_cast<int>(j);
        }
    }
    return best;
}

// Maps library exceptions onto the exit-status contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const SimulationError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const SingularSystemError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const IterationFailure& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const ModelViolation& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ContractViolation& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

}  // namespace

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
    return buf;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
    key = trim(key);
    const std::string value(trim(raw));
    if (key == "scheme") {
        auto s = parse_scheme(value);
        if (!s) throw ConfigError("unknown scheme '" + value + "'");
        c.scheme = *s;
    } else if (key == "diffusivity") {
        c.diffusivity = value;
    } else if (key == "nu") {
        c.nu = parse_real(value, key);
    } else if (key == "length") {
        c.length = parse_real(value, key);
    } else if (key == "cells") {
        c.num_cells = parse_integer<int>(value, key);
    } else if (key == "dt") {
        c.dt = parse_real(value, key);
    } else if (key == "r") {
        c.r = parse_real(value, key);
    } else if (key == "tau") {
        if (value == "nu_dx") {
            c.tau_rule = TauRule::NuDx;
        } else if (value == "dx_over_cs") {
            c.tau_rule = TauRule::DxOverCs;
        } else {
            c.tau_rule = TauRule::Value;
            c.tau_value = parse_real(value, key);
        }
    } else if (key == "cs") {
        c.cs = parse_real(value, key);
    } else if (key == "bc_left") {
        c.bc_left = value;
    } else if (key == "bc_right") {
        c.bc_right = value;
    } else if (key == "initial") {
        c.initial = value;
    } else if (key == "steps") {
        c.num_steps = parse_integer<int>(value, key);
    } else if (key == "snapshot_every") {
        c.snapshot_every = parse_integer<int>(value, key);
    } else if (key == "seed") {
        c.seed = parse_integer<std::uint64_t>(value, key);
    } else if (key == "threshold") {
        c.threshold = parse_real(value, key);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("override must be key=value: '" + std::string(assignment) + "'");
    apply_setting(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::map<std::string, std::string> entries;
    const auto body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("invalid JSON config: ") + e.what());
        }
        if (!doc.is_object()) throw ConfigError("JSON config must be an object");
        for (const auto& [key, value] : doc.items()) {
            if (value.is_string()) {
                entries[key] = value.get<std::string>();
            } else if (value.is_number_float()) {
                entries[key] = format_real(value.get<double>());
            } else if (value.is_number() || value.is_boolean()) {
                entries[key] = value.dump();
            } else {
                throw ConfigError("JSON config value for '" + key + "' must be a scalar");
            }
        }
        return entries;
    }

    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        const auto content = trim(std::string_view(line).substr(0, line.find('#')));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        entries[std::string(trim(content.substr(0, eq)))] = std::string(trim(content.substr(eq + 1)));
    }
    return entries;
}

ExperimentConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
    ExperimentConfig config;
    if (path) {
        for (const auto& [key, value] : read_config_file(*path)) apply_setting(config, key, value);
    }
    for (const auto& o : overrides) apply_override(config, o);
    return config;
}

ResolvedExperiment resolve(const ExperimentConfig& c) {
    if (c.dt.has_value() == c.r.has_value()) throw ConfigError("exactly one of dt and r must be given");
    if (c.num_steps < 0) throw ConfigError("steps must be >= 0");
    if (c.snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");
    if (!(c.threshold > 0.0)) throw ConfigError("threshold must be positive");
    if (!(c.length > 0.0)) throw ConfigError("length must be positive");
    if (c.num_cells < 2) throw ConfigError("cells must be >= 2");

    ResolvedExperiment x{build_uniform_grid(c.length, c.num_cells), SchemeParams{},
                         Boundaries{parse_boundary(c.bc_left), parse_boundary(c.bc_right)}, Field{}};
    x.params.diffusivity = parse_diffusivity(c);
    x.params.dx = x.grid.dx;
    const double nu_ref = reference_nu(x.params.diffusivity);
    x.params.dt = c.dt ? *c.dt : *c.r * x.grid.dx * x.grid.dx / nu_ref;
    if (!(x.params.dt > 0.0)) throw ConfigError("time step must be positive");
    x.params.tau = resolve_tau(c, nu_ref, x.grid.dx);
    if (c.scheme == Scheme::Hyperbolic && !(*x.params.tau > 0.0)) {
        throw ConfigError("hyperbolic scheme needs tau > 0");
    }
    x.initial = make_initial(c, x.grid);
    return x;
}

std::optional<DtRule> parse_dt_rule(std::string_view name) {
    if (name == "dx2") return DtRule::Dx2;
    if (name == "dx_3_2") return DtRule::Dx3Over2;
    if (name == "dx") return DtRule::Dx;
    return std::nullopt;
}

int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto x = resolve(config);
        const RunRecord record =
            run_simulation(x.initial, x.params, x.bcs, config.scheme, config.num_steps, config.snapshot_every);
        const int source = source_node(x.initial);
        write_row(out, {"step", "time", "max_norm", "support_radius", "diverged"});
        for (std::size_t i = 0; i < record.snapshots.size(); ++i) {
            const auto& snap = record.snapshots[i];
            const bool diverged = record.diverged && record.diverged_step == snap.time_index;
            write_row(out, {std::to_string(snap.time_index), format_real(snap.time_index * x.params.dt),
                            format_real(record.max_norms[i]),
                            std::to_string(support_radius(snap.values, source, config.threshold)),
                            diverged ? "true" : "false"});
        }
        if (record.diverged) {
            err << "diverged at step " << *record.diverged_step << '\n';
            return static_cast<int>(kExitDiverged);
        }
        return static_cast<int>(kExitOk);
    });
}

namespace {

struct LevelResult {
    int cells = 0;
    double dx = 0.0;
    double dt = 0.0;
    double max_error = 0.0;
    bool diverged = false;
};

LevelResult run_level(const ExperimentConfig& base, int cells, double dt, int steps, const SineProfile& sine) {
    ExperimentConfig c = base;
    c.num_cells = cells;
    c.dt = dt;
    c.r.reset();
    c.num_steps = steps;
    c.snapshot_every = steps > 0 ? steps : 1;
    const auto x = resolve(c);
    const RunRecord record = run_simulation(x.initial, x.params, x.bcs, c.scheme, steps, c.snapshot_every);

    LevelResult level{cells, x.grid.dx, dt, 0.0, record.diverged};
    const auto& final_layer = record.snapshots.back();
    const double t = final_layer.time_index * dt;
    const double nu = x.params.diffusivity.nu();
    const SineSeriesSolution parabolic{c.length, nu, {{sine.m, sine.amplitude}}};
    for (std::size_t j = 0; j < final_layer.values.size(); ++j) {
        const double xj = x.grid.nodes[j];
        const double exact = c.scheme == Scheme::Hyperbolic
                                 ? sine.amplitude * hyperbolic_mode_solution(nu, *x.params.tau, c.length, sine.m, t, xj)
                                 : evaluate_series(parabolic, xj, t);
        level.max_error = std::max(level.max_error, std::abs(final_layer.values[j] - exact));
    }
    if (record.diverged) level.max_error = std::numeric_limits<double>::infinity();
    return level;
}

}  // namespace

int cmd_converge(const ExperimentConfig& config, int refinements, DtRule rule, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        if (refinements < 2) throw ConfigError("converge needs at least 2 refinements");
        const auto sine = sine_profile(config.initial);
        if (!sine) throw ConfigError("converge needs a sine:m initial profile (closed-form oracle)");
        if (config.diffusivity != "constant") throw ConfigError("no closed-form oracle for nonconstant diffusivity");
        if (!is_homogeneous_dirichlet(config.bc_left) || !is_homogeneous_dirichlet(config.bc_right)) {
            throw ConfigError("converge needs homogeneous Dirichlet boundaries (closed-form oracle)");
        }
        const auto base = resolve(config);
        if (config.num_steps < 1) throw ConfigError("converge needs steps >= 1 to fix the final time");
        const double final_time = config.num_steps * base.params.dt;
        const double factor = rule == DtRule::Dx2 ? 0.25 : rule == DtRule::Dx ? 0.5 : std::pow(2.0, -1.5);

        std::vector<std::future<LevelResult>> jobs;
        for (int k = 0; k < refinements; ++k) {
            const int cells = config.num_cells << k;
            const double target_dt = base.params.dt * std::pow(factor, k);
            int steps = std::max(1, static_cast<int>(std::lround(final_time / target_dt)));
            if (config.scheme == Scheme::Saulyev && steps % 2 != 0) ++steps;
            const double dt = final_time / steps;
            jobs.push_back(std::async(std::launch::async, run_level, config, cells, dt, steps, *sine));
        }

        write_row(out, {"N", "dx", "dt", "max_error", "observed_order"});
        bool diverged = false;
        std::optional<LevelResult> previous;
        for (auto& job : jobs) {
            const LevelResult level = job.get();
            diverged = diverged || level.diverged;
            std::string order;
            if (previous && level.max_error > 0.0 && previous->max_error > 0.0) {
                order = format_real(std::log(previous->max_error / level.max_error) / std::log(previous->dx / level.dx));
            }
            write_row(out, {std::to_string(level.cells), format_real(level.dx), format_real(level.dt),
                            format_real(level.max_error), order});
            previous = level;
        }
        return static_cast<int>(diverged ? kExitDiverged : kExitOk);
    });
}

int cmd_stability(const std::vector<Scheme>& schemes, const std::vector<double>& r_values, int theta_samples,
                  const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (schemes.empty() || r_values.empty()) throw ConfigError("stability needs schemes and r values");
        if (theta_samples < 2) throw ConfigError("theta_samples must be >= 2");
        for (Scheme s : schemes) {
            if (s == Scheme::Saulyev) throw ConfigError("saulyev has no closed-form symbol; use an empirical run");
        }
        const double dx = config.length / config.num_cells;
        write_row(out, {"scheme", "r", "max_amplification", "stable"});
        for (Scheme s : schemes) {
            for (double r : r_values) {
                if (!(r > 0.0)) throw ConfigError("r values must be positive");
                std::optional<HyperbolicSymbol> symbol;
                if (s == Scheme::Hyperbolic) {
                    symbol = HyperbolicSymbol{config.nu, resolve_tau(config, config.nu, dx), r * dx * dx / config.nu, dx};
                    if (!(symbol->tau > 0.0)) throw ConfigError("hyperbolic symbol needs tau > 0");
                }
                const double g = max_amplification(s, r, symbol, theta_samples);
                write_row(out, {std::string(scheme_name(s)), format_real(r), format_real(g),
                                g <= 1.0 + 1e-12 ? "true" : "false"});
            }
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_dispersion(double nu, double tau, double kappa_max, int samples, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (samples < 2) throw ConfigError("dispersion needs samples >= 2");
        if (!(nu > 0.0) || !(tau > 0.0) || !(kappa_max > 0.0)) {
            throw ConfigError("dispersion needs positive nu, tau and kappa_max");
        }
        write_row(out, {"kappa", "re_wplus", "im_wplus", "re_wminus", "im_wminus", "im_parabolic", "rel_gap"});
        for (int i = 0; i < samples; ++i) {
            const double kappa = kappa_max * i / (samples - 1);
            const auto d = dispersion_branches(nu, tau, kappa);
            std::string gap;
            if (kappa > 0.0) gap = format_real(std::abs(d.omega_plus - d.omega_parabolic) / std::abs(d.omega_parabolic));
            write_row(out, {format_real(kappa), format_real(d.omega_plus.real()), format_real(d.omega_plus.imag()),
                            format_real(d.omega_minus.real()), format_real(d.omega_minus.imag()),
                            format_real(d.omega_parabolic.imag()), gap});
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_bound(double tau, double sup_utt, double horizon, const std::optional<ExperimentConfig>& check,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (tau < 0.0 || sup_utt < 0.0 || horizon < 0.0) throw ConfigError("bound inputs must be nonnegative");
        if (!check) {
            write_row(out, {"tau", "M", "T", "bound"});
            write_row(out, {format_real(tau), format_real(sup_utt), format_real(horizon),
                            format_real(hyperbolization_error_bound({tau, sup_utt, horizon}))});
            return static_cast<int>(kExitOk);
        }

        const auto& c = *check;
        SineProfile sine{1, 0.0};
        if (auto s = sine_profile(c.initial)) {
            sine = *s;
        } else if (c.initial != "zero") {
            throw ConfigError("bound check needs a sine:m or zero initial profile");
        }
        const double kappa = sine.m * std::numbers::pi / c.length;
        const double rate = c.nu * kappa * kappa;
        const double m_analytic = rate * rate * std::abs(sine.amplitude);
        const double bound = hyperbolization_error_bound({tau, m_analytic, horizon});

        double measured = 0.0;
        if (tau > 0.0 && sine.amplitude != 0.0) {
            constexpr int kSamples = 200;
            const SineSeriesSolution parabolic{c.length, c.nu, {{sine.m, sine.amplitude}}};
            for (int it = 0; it < kSamples; ++it) {
                const double t = horizon * it / (kSamples - 1);
                for (int ix = 0; ix < kSamples; ++ix) {
                    const double x = c.length * ix / (kSamples - 1);
                    const double hyp = sine.amplitude * hyperbolic_mode_solution(c.nu, tau, c.length, sine.m, t, x);
                    measured = std::max(measured, std::abs(hyp - evaluate_series(parabolic, x, t)));
                }
            }
        }
        write_row(out, {"tau", "M", "T", "bound", "measured", "satisfied"});
        write_row(out, {format_real(tau), format_real(m_analytic), format_real(horizon), format_real(bound),
                        format_real(measured), measured <= bound ? "true" : "false"});
        return static_cast<int>(kExitOk);
    });
}

int cmd_infospeed(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (config.initial.rfind("dirac", 0) != 0) throw ConfigError("infospeed needs a dirac initial profile");
        ExperimentConfig c = config;
        c.snapshot_every = 1;
        const auto x = resolve(c);
        const RunRecord record = run_simulation(x.initial, x.params, x.bcs, c.scheme, c.num_steps, 1);
        const auto radii = information_speed(record, c.threshold);

        write_row(out, {"step", "support_radius"});
        for (std::size_t i = 0; i < radii.size(); ++i) {
            write_row(out, {std::to_string(record.snapshots[i].time_index), std::to_string(radii[i])});
        }
        if (radii.size() > 1) {
            const int source = source_node(x.initial);
            const int to_boundary = std::min(source, x.grid.num_cells - source);
            // Last step before the front reached the nodes a boundary closure reads.
            std::size_t last = 1;
            while (last + 1 < radii.size() && radii[last + 1] + 2 < to_boundary) ++last;
            const double cells_per_step = static_cast<double>(radii[last]) / record.snapshots[last].time_index;
            write_row(out, {"c_s_cells_per_step", format_real(cells_per_step)});
            write_row(out, {"c_s_physical", format_real(cells_per_step * x.grid.dx / x.params.dt)});
        }
        if (record.diverged) return static_cast<int>(kExitDiverged);
        return static_cast<int>(kExitOk);
    });
}

}  // namespace heatlab::cli
