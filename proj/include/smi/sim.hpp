#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "smi/numerics.hpp"
#include "smi/rng.hpp"

namespace smi {

/// Evaluates phi(z) for an identity map or a monomial basis of degree <= 2.
struct RegressorMap {
    bool identity = true;
    // Each entry is one basis function given as per-coordinate exponents.
    std::vector<std::vector<int>> monomial_exponents;

    std::size_t output_dim(std::size_t input_dim) const {
        return identity ? input_dim : monomial_exponents.size();
    }
};

Vector apply_regressor_map(const RegressorMap& map, const Vector& z_raw);

enum class DisturbanceKind { Hypercube, Ball, Custom };

struct DisturbanceSpec {
    DisturbanceKind kind = DisturbanceKind::Hypercube;
    Vector bound;         // hypercube half-widths (element-wise)
    double radius = 0.0;  // ball radius
    // Custom bounded sampler; must respect `bound` element-wise.
    std::function<Vector(CounterRng&)> custom;
};

struct InputSpec {
    Vector mean;       // empty means zero
    Vector variance;   // per-coordinate; scalar configs broadcast
    std::size_t dim = 0;
};

struct SystemSpec {
    bool linear = true;
    Matrix a;                       // linear: n_x x n_x
    Matrix b;                       // linear: n_x x n_u
    RegressorMap basis;             // nonlinear: phi applied to z
    Matrix theta_true;              // nonlinear: n_x x n_theta
    DisturbanceSpec disturbance;
    InputSpec input;
    Vector x0;
    std::optional<Vector> measurement_noise_bound;  // v_bar over R^{n_z}

    std::size_t n_x() const { return linear ? a.rows() : theta_true.rows(); }
    std::size_t n_u() const { return input.dim; }
    std::size_t n_z() const { return n_x() + n_u(); }
    /// True parameter rows in regressor coordinates (theta*^i).
    Matrix theta_rows() const;
    /// Element-wise disturbance bound implied by the spec.
    Vector disturbance_bound() const;
};

struct Trajectory {
    std::vector<Vector> states;        // x_0 .. x_K
    std::vector<Vector> inputs;        // u_0 .. u_{K-1}
    std::vector<Vector> disturbances;  // w_0 .. w_{K-1}
    std::vector<Vector> regressors;    // z_0 .. z_{K-1}
    std::vector<Vector> noisy_regressors;  // present iff measurement noise set
    std::vector<Vector> noise;             // v_0 .. v_K over R^{n_z}

    std::size_t horizon() const { return inputs.size(); }
};

inline constexpr double kDivergenceGuard = 1e12;

/// Simulates K steps; reproducible from (spec, seed). The disturbance,
/// input, and measurement-noise draws use separate RNG streams.
Trajectory simulate(const SystemSpec& sys, std::size_t k_steps, std::uint64_t seed);

/// Uniform sample from the solid Euclidean ball of the given radius.
Vector sample_ball_uniform(double radius, std::size_t n, CounterRng& rng);
Vector sample_ball_uniform(double radius, std::size_t n, std::uint64_t seed);

struct PeReport {
    std::vector<double> window_lambda_min;  // one per window start
    bool pass = false;
    double b_z = 0.0;  // max ||z_k||_2
};

/// Sliding-window persistent-excitation check on the regressor sequence.
PeReport pe_check(const Trajectory& traj, std::size_t n_u_window, double beta_sq);

/// Boundary-band mass for the uniform law on [-w_bar, w_bar].
double tightness_q_uniform(double w_bar_i, double eps);

struct SignConditionWindow {
    std::size_t start;
    bool satisfied;
    bool degenerate;  // centroid coincides with the true parameter
};

struct SignConditionReport {
    std::vector<SignConditionWindow> windows;
    std::size_t satisfied_count = 0;
};

/// Diagnostic for the stronger excitation condition used by the point-wise
/// convergence result: per window, does some step align the probe with the
/// centroid error in opposite signs at magnitude >= beta * delta?
SignConditionReport sign_condition_diagnostic(const Trajectory& traj,
                                              const std::vector<std::vector<Vector>>& centroids,
                                              const Matrix& theta_true, double beta, double delta,
                                              std::size_t n_g, std::uint64_t seed);

}  // namespace smi
