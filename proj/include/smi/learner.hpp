#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "smi/polytope.hpp"
#include "smi/sim.hpp"

namespace smi {

enum class UpdatePolicy { Exact, Sampled, Auto };

struct HitAndRunParams {
    std::size_t chains = 8;
    std::size_t steps = 2000;
};

struct LearnerConfig {
    double alpha0 = -0.3;                  // in [-1, 0)
    Vector w_bound;                        // per-component, possibly inflated
    std::optional<Vector> v_bound;         // measurement-noise bound over R^{n_z}
    RegressorMap regressor_map;            // identity unless basis functions
    UpdatePolicy update_policy = UpdatePolicy::Auto;
    double initial_radius = 1.0;           // box half-width of theta_0^i
    HitAndRunParams hit_and_run;
    std::size_t volume_mc_samples = 20000;
    std::uint64_t seed = 0;                // stream base for sampled methods

    void validate(std::size_t n_x) const;
};

/// Per-state-equation feasible set with its caches.
struct ComponentState {
    std::size_t index = 0;
    HPolytope poly;
    Vector centroid;
    std::vector<Vector> cached_vertices;  // exact path only
    bool exact_path = true;
    std::size_t n_sel = 0;
    std::vector<std::size_t> trigger_times;
    double hbar = 0.0;
    double volume = 0.0;
    double volume_std_error = 0.0;  // zero on the exact path
};

struct StackedFeasibleSet {
    std::vector<ComponentState> components;

    double worst_case_volume() const;
};

struct DataPoint {
    Vector z_prev;   // regressor (already mapped through phi if nonlinear)
    Vector x_next;   // observed next state (noisy when v_bound is set)
    std::size_t step = 0;
};

struct Offsets {
    double alpha_plus;
    double alpha_minus;
    // Centered-support denominators, exposed for the running h-bar maximum.
    double h_plus;
    double h_minus;
};

/// Normalized offsets of the two data halfspaces w.r.t. the current set.
/// Throws DegenerateGeometryError when a centered-support denominator is zero.
Offsets offsets(const ComponentState& comp, const Vector& z, double x_i, double w_i);

inline bool sub_trigger(double alpha_plus, double alpha_minus, double alpha0) {
    return std::max(alpha_plus, alpha_minus) >= alpha0;
}

struct ComponentStepRecord {
    bool gamma_i = false;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    bool degenerate = false;
    std::size_t n_sel = 0;
    double volume = 0.0;
    bool volume_exact_path = true;
    double radius = std::numeric_limits<double>::quiet_NaN();    // outer radius at theta*
    double inradius = std::numeric_limits<double>::quiet_NaN();  // inradius at theta*
    Vector centroid;
};

struct StepRecord {
    std::size_t step = 0;
    bool gamma = false;
    std::vector<ComponentStepRecord> components;
    std::int64_t select_us = 0;
    std::int64_t update_us = 0;
};

struct RunLog {
    std::size_t n_x = 0;
    std::size_t n_z = 0;
    std::vector<StepRecord> steps;
    Vector initial_volumes;
    std::size_t total_selections = 0;  // number of stored data pairs
};

struct StepResult {
    bool gamma = false;
    std::vector<ComponentStepRecord> components;
    std::int64_t select_us = 0;  // trigger evaluation (offset LPs)
    std::int64_t update_us = 0;  // redundancy removal + centroid + volume
};

/// One Algorithm-1 iteration: offsets, triggers, per-component updates.
/// Only components whose own sub-trigger fired intersect the new halfspaces.
StepResult step(StackedFeasibleSet& s, const DataPoint& d, const LearnerConfig& cfg);

/// Fresh stacked set: one initial box per component, centroids cached.
StackedFeasibleSet make_initial_set(std::size_t n_x, std::size_t n_z,
                                    const LearnerConfig& cfg);

/// Worst-case upper bound w_i + v_i + zeta for the noisy-regressor variant,
/// with zeta from 2*n_z support calls on the current set.
double noisy_bound(const ComponentState& comp, const Vector& v_bound, double base_w_i,
                   double v_i);

struct RunResult {
    RunLog log;
    StackedFeasibleSet final_state;
    Trajectory trajectory;
    std::map<std::size_t, StackedFeasibleSet> snapshots;
    Vector w_bound_used;  // base bound per component (excl. per-step zeta)
};

/// Simulates and learns jointly over K steps.
RunResult run(const SystemSpec& sys, const LearnerConfig& cfg, std::size_t k_steps,
              std::uint64_t seed, const std::vector<std::size_t>& snapshot_steps = {});

}  // namespace smi
