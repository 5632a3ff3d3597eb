#pragma once

#include <optional>
#include <vector>

#include "heatlab/grid.hpp"
#include "heatlab/schemes.hpp"

namespace heatlab {

inline constexpr double kDivergenceThreshold = 1e12;

struct RunRecord {
    std::vector<Field> snapshots;
    std::vector<double> max_norms;
    // false for layers that are not consistent with the heat equation
    // (odd Saulyev layers)
    std::vector<bool> consistent;
    bool diverged = false;
    std::optional<int> diverged_step;
    double dt = 0.0;
};

/// Advances `initial` by `num_steps` layers with `scheme`, keeping every
/// `snapshot_every`-th layer plus the last one. Multi-layer schemes start
/// themselves (one explicit step for leap-frog and Dufort-Frankel, the Taylor
/// start for the hyperbolic scheme). Saulyev advances in pairs of layers.
/// Stops at the first layer with a non-finite value or max-norm above
/// kDivergenceThreshold. Stepper errors are rethrown as SimulationError.
RunRecord run_simulation(const Field& initial, const SchemeParams& params, const Boundaries& bcs, Scheme scheme,
                         int num_steps, int snapshot_every = 1);

}  // namespace heatlab
