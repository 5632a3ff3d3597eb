// heatlab: command-line front end for the 1-D heat-equation scheme laboratory.
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heatlab/experiment.hpp"

namespace {

using namespace heatlab;

struct ConfigFlags {
    std::string path;
    std::vector<std::string> overrides;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", path, "key=value or JSON experiment file");
        cmd->add_option("--set", overrides, "override a config key (key=value), repeatable");
    }

    cli::ExperimentConfig load() const {
        return cli::load_config(path.empty() ? std::nullopt : std::optional<std::string>(path), overrides);
    }
};

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
    std::vector<Scheme> out;
    for (const auto& n : names) {
        auto s = parse_scheme(n);
        if (!s) throw cli::ConfigError("unknown scheme '" + n + "'");
        out.push_back(*s);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-difference laboratory for the 1-D heat equation"};
    app.require_subcommand(1);

    ConfigFlags run_flags, converge_flags, stability_flags, bound_flags, info_flags;

    auto* run = app.add_subcommand("run", "advance one experiment and print per-snapshot diagnostics");
    run_flags.attach(run);

    auto* converge = app.add_subcommand("converge", "refinement study against the closed-form sine oracle");
    converge_flags.attach(converge);
    int refinements = 4;
    std::string dt_rule = "dx2";
    converge->add_option("--refinements", refinements, "number of grid levels (N doubles per level)");
    converge->add_option("--dt-rule", dt_rule, "time-step scaling: dx2, dx_3_2 or dx");

    auto* stability = app.add_subcommand("stability", "tabulate von Neumann max |g| over theta");
    stability_flags.attach(stability);
    std::vector<std::string> scheme_names;
    std::vector<double> r_values;
    int theta_samples = 721;
    stability->add_option("--schemes", scheme_names, "schemes to tabulate")->delimiter(',')->required();
    stability->add_option("--r", r_values, "diffusion numbers")->delimiter(',')->required();
    stability->add_option("--theta-samples", theta_samples, "uniform theta samples on [0, pi]");

    auto* dispersion = app.add_subcommand("dispersion", "hyperbolic dispersion branches vs the parabolic relation");
    double disp_nu = 1.0, disp_tau = 1e-2, kappa_max = 10.0;
    int disp_samples = 101;
    dispersion->add_option("--nu", disp_nu, "diffusivity");
    dispersion->add_option("--tau", disp_tau, "relaxation time");
    dispersion->add_option("--kappa-max", kappa_max, "largest wavenumber");
    dispersion->add_option("--samples", disp_samples, "number of wavenumbers");

    auto* bound = app.add_subcommand("bound", "hyperbolization error bound, optionally checked on a sine mode");
    bound_flags.attach(bound);
    double bound_tau = 1e-3, bound_m = 1.0, bound_t = 1.0;
    bool bound_check = false;
    bound->add_option("--tau", bound_tau, "relaxation time");
    bound->add_option("--M", bound_m, "sup |u_tt| of the parabolic solution");
    bound->add_option("--T", bound_t, "time horizon");
    bound->add_flag("--check", bound_check, "measure |u_h - u_p| for the configured sine mode");

    auto* infospeed = app.add_subcommand("infospeed", "support growth of a discrete Dirac");
    info_flags.attach(infospeed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitConfigError;
    }

    try {
        if (*run) return cli::cmd_run(run_flags.load(), std::cout, std::cerr);
        if (*converge) {
            auto rule = cli::parse_dt_rule(dt_rule);
            if (!rule) throw cli::ConfigError("unknown dt rule '" + dt_rule + "'");
            return cli::cmd_converge(converge_flags.load(), refinements, *rule, std::cout, std::cerr);
        }
        if (*stability) {
            return cli::cmd_stability(parse_schemes(scheme_names), r_values, theta_samples, stability_flags.load(),
                                      std::cout, std::cerr);
        }
        if (*dispersion) return cli::cmd_dispersion(disp_nu, disp_tau, kappa_max, disp_samples, std::cout, std::cerr);
        if (*bound) {
            std::optional<cli::ExperimentConfig> check;
            if (bound_check) check = bound_flags.load();
            return cli::cmd_bound(bound_tau, bound_m, bound_t, check, std::cout, std::cerr);
        }
        if (*infospeed) return cli::cmd_infospeed(info_flags.load(), std::cout, std::cerr);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kExitConfigError;
    }
    return cli::kExitConfigError;
}
