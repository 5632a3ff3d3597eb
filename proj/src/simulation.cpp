#include "heatlab/simulation.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "heatlab/errors.hpp"

namespace heatlab {

namespace {

bool is_divergent(const Field& f) {
    return !f.all_finite() || f.max_norm() > kDivergenceThreshold;
}

class Recorder {
public:
    Recorder(RunRecord& record, int num_steps, int every) : record_(record), num_steps_(num_steps), every_(every) {}

    // Returns false once the run must stop.
    bool offer(const Field& layer, bool consistent) {
        const bool diverged = is_divergent(layer);
        const int n = layer.time_index;
        if (diverged || n % every_ == 0 || n == num_steps_) {
            record_.snapshots.push_back(layer);
            record_.max_norms.push_back(layer.max_norm());
            record_.consistent.push_back(consistent);
        }
        if (diverged) {
            record_.diverged = true;
            record_.diverged_step = n;
            return false;
        }
        return true;
    }

private:
    RunRecord& record_;
    int num_steps_;
    int every_;
};

Field single_step(Scheme scheme, const StepState& state) {
    switch (scheme) {
        case Scheme::Explicit: return step_explicit(state);
        case Scheme::Implicit: return step_implicit(state);
        case Scheme::LeapFrog: return step_leapfrog(state);
        case Scheme::CrankNicolson: return step_crank_nicolson(state);
        case Scheme::CnNonlinear: return step_cn_nonlinear(state);
        case Scheme::CrossCn: return step_ccn(state);
        case Scheme::DufortFrankel: return step_dufort_frankel(state);
        case Scheme::Hyperbolic: return step_hyperbolic(state);
        case Scheme::Saulyev: break;
    }
    throw std::logic_error("single_step called for a paired scheme");
}

}  // namespace

RunRecord run_simulation(const Field& initial, const SchemeParams& params, const Boundaries& bcs, Scheme scheme,
                         int num_steps, int snapshot_every) {
    if (num_steps < 0) throw std::invalid_argument("number of steps must be non-negative");
    if (snapshot_every < 1) throw std::invalid_argument("snapshot cadence must be >= 1");

    RunRecord record;
    record.dt = params.dt;
    Recorder recorder(record, num_steps, snapshot_every);

    StepState state{std::nullopt, initial, params, bcs};
    state.curr.time_index = 0;
    if (!recorder.offer(state.curr, true)) return record;

    int n = 0;
    try {
        while (n < num_steps) {
            if (scheme == Scheme::Saulyev) {
                auto [odd, even] = step_saulyev_pair(state);
                ++n;
                if (!recorder.offer(odd, false) || n == num_steps) break;
                ++n;
                if (!recorder.offer(even, true)) break;
                state.curr = std::move(even);
                continue;
            }

            Field next;
            if (n == 0 && uses_previous_layer(scheme)) {
                next = scheme == Scheme::Hyperbolic ? bootstrap_hyperbolic(state.curr, params, bcs)
                                                    : step_explicit(state);
            } else {
                next = single_step(scheme, state);
            }
            ++n;
            if (!recorder.offer(next, true)) break;
            if (uses_previous_layer(scheme)) {
                state.prev = std::move(state.curr);
            }
            state.curr = std::move(next);
        }
    } catch (const std::exception& e) {
        std::throw_with_nested(SimulationError(e.what(), n + 1));
    }
    return record;
}

}  // namespace heatlab
