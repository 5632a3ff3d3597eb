#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heatlab/grid.hpp"
#include "heatlab/schemes.hpp"

namespace heatlab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitDiverged = 2,
    kExitSolverFailure = 3,
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TauRule { Value, NuDx, DxOverCs };

/// Flat experiment description. Every field is settable by name through
/// apply_setting, so config files and `--set key=value` share one parser.
///
/// Keys: scheme, diffusivity (constant | affine:a:b), nu, length, cells,
/// dt | r, tau (number | nu_dx | dx_over_cs), cs, bc_left, bc_right
/// (dirichlet:v | flux:v | robin:a:b:v), initial (dirac[:j] | sine:m[:a] |
/// zero | constant:c | nyquist | random | custom:path), steps,
/// snapshot_every, seed, threshold.
struct ExperimentConfig {
    Scheme scheme = Scheme::Explicit;
    std::string diffusivity = "constant";
    double nu = 1.0;
    double length = 1.0;
    int num_cells = 64;
    std::optional<double> dt;
    std::optional<double> r;
    TauRule tau_rule = TauRule::NuDx;
    double tau_value = 0.0;
    std::optional<double> cs;
    std::string bc_left = "dirichlet:0";
    std::string bc_right = "dirichlet:0";
    std::string initial = "dirac";
    int num_steps = 0;
    int snapshot_every = 1;
    std::uint64_t seed = 0;
    double threshold = 1e-14;
};

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses `key=value` (for --set overrides).
void apply_override(ExperimentConfig& config, std::string_view assignment);

/// Reads a key=value file ('#' comments) or a flat JSON object.
std::map<std::string, std::string> read_config_file(const std::string& path);

ExperimentConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides);

/// Everything a run needs, derived from a validated config.
struct ResolvedExperiment {
    Grid1D grid;
    SchemeParams params;
    Boundaries bcs;
    Field initial;
};

ResolvedExperiment resolve(const ExperimentConfig& config);

/// Decimal text with 17 significant digits.
std::string format_real(double value);

enum class DtRule { Dx2, Dx3Over2, Dx };
std::optional<DtRule> parse_dt_rule(std::string_view name);

int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_converge(const ExperimentConfig& config, int refinements, DtRule rule, std::ostream& out, std::ostream& err);
int cmd_stability(const std::vector<Scheme>& schemes, const std::vector<double>& r_values, int theta_samples,
                  const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_dispersion(double nu, double tau, double kappa_max, int samples, std::ostream& out, std::ostream& err);
int cmd_bound(double tau, double sup_utt, double horizon, const std::optional<ExperimentConfig>& check,
              std::ostream& out, std::ostream& err);
int cmd_infospeed(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace heatlab::cli
