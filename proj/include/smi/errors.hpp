#pragma once

#include <stdexcept>
#include <string>

namespace smi {

/// Malformed caller input: dimension mismatches, out-of-range parameters.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numeric procedure failed to converge or hit an iteration cap.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Problem size exceeds the limits of an exact method; use a sampled one.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A polytope is flat along the probed direction; offsets are undefined.
struct DegenerateGeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The feasible set became empty: the disturbance bound is below the truth.
struct ModelFalsifiedError : std::runtime_error {
    ModelFalsifiedError(const std::string& what, int step_)
        : std::runtime_error(what), step(step_) {}
    int step;
};

/// Simulated state magnitude exceeded the divergence guard.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace smi
