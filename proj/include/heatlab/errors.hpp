#pragma once

#include <stdexcept>
#include <string>

namespace heatlab {

// Caller broke a stepper/solver precondition (missing layer, wrong model, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Diffusivity evaluated to a non-positive or non-finite value.
class ModelViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IterationFailure : public std::runtime_error {
public:
    IterationFailure(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Stepper failure inside run_simulation, tagged with the layer being computed.
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, int step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    int step() const noexcept { return step_; }

private:
    int step_;
};

}  // namespace heatlab
