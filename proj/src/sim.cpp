#include "smi/sim.hpp"

#include <cmath>

#include "smi/errors.hpp"

namespace smi {

Vector apply_regressor_map(const RegressorMap& map, const Vector& z_raw) {
    if (map.identity) return z_raw;
    Vector out(map.monomial_exponents.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const auto& expo = map.monomial_exponents[j];
        if (expo.size() != z_raw.size())
            throw InputError("apply_regressor_map: exponent arity mismatch");
        double v = 1.0;
        for (std::size_t k = 0; k < expo.size(); ++k) {
            for (int e = 0; e < expo[k]; ++e) v *= z_raw[k];
        }
        out[j] = v;
    }
    return out;
}

Matrix SystemSpec::theta_rows() const {
    if (linear) {
        Matrix th(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) th(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) th(i, a.cols() + j) = b(i, j);
        }
        return th;
    }
    return theta_true;
}

Vector SystemSpec::disturbance_bound() const {
    const std::size_t nx = n_x();
    switch (disturbance.kind) {
        case DisturbanceKind::Hypercube:
            if (disturbance.bound.size() != nx)
                throw InputError("SystemSpec: hypercube bound dimension mismatch");
            return disturbance.bound;
        case DisturbanceKind::Ball:
            return Vector(nx, disturbance.radius);
        case DisturbanceKind::Custom:
            if (disturbance.bound.size() != nx)
                throw InputError("SystemSpec: custom sampler needs an explicit bound");
            return disturbance.bound;
    }
    throw InputError("SystemSpec: unknown disturbance kind");
}

Vector sample_ball_uniform(double radius, std::size_t n, CounterRng& rng) {
    if (radius <= 0.0) throw InputError("sample_ball_uniform: radius must be positive");
    Vector d(n);
    double nd = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = rng.gaussian();
        nd += d[j] * d[j];
    }
    nd = std::sqrt(nd);
    if (nd < 1e-300) return Vector(n, 0.0);
    const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) d[j] = r * d[j] / nd;
    return d;
}

Vector sample_ball_uniform(double radius, std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed, CounterRng::kDisturbance);
    return sample_ball_uniform(radius, n, rng);
}

namespace {

Vector draw_disturbance(const DisturbanceSpec& spec, std::size_t nx, CounterRng& rng) {
    switch (spec.kind) {
        case DisturbanceKind::Hypercube: {
            Vector w(nx);
            for (std::size_t j = 0; j < nx; ++j)
                w[j] = rng.uniform(-spec.bound[j], spec.bound[j]);
            return w;
        }
        case DisturbanceKind::Ball:
            return sample_ball_uniform(spec.radius, nx, rng);
        case DisturbanceKind::Custom:
            return spec.custom(rng);
    }
    throw InputError("draw_disturbance: unknown kind");
}

}  // namespace

Trajectory simulate(const SystemSpec& sys, std::size_t k_steps, std::uint64_t seed) {
    const std::size_t nx = sys.n_x();
    const std::size_t nu = sys.n_u();
    const std::size_t nz = nx + nu;
    if (sys.x0.size() != nx) throw InputError("simulate: x0 dimension mismatch");
    const Vector wbar = sys.disturbance_bound();

    CounterRng rng_w(seed, CounterRng::kDisturbance);
    CounterRng rng_u(seed, CounterRng::kInput);
    CounterRng rng_v(seed, CounterRng::kMeasurementNoise);

    // Support probe: every draw must respect the element-wise bound.
    {
        CounterRng probe(seed ^ 0xA5A5A5A5ULL, CounterRng::kDisturbance);
        for (int s = 0; s < 100000; ++s) {
            const Vector w = draw_disturbance(sys.disturbance, nx, probe);
            for (std::size_t j = 0; j < nx; ++j)
                if (std::fabs(w[j]) > wbar[j] + 1e-12)
                    throw InputError("simulate: disturbance sample violates its bound");
        }
    }

    Trajectory traj;
    traj.states.reserve(k_steps + 1);
    traj.states.push_back(sys.x0);
    const Matrix theta = sys.theta_rows();
    const bool noisy = sys.measurement_noise_bound.has_value();
    if (noisy && sys.measurement_noise_bound->size() != nz)
        throw InputError("simulate: measurement noise bound dimension mismatch");

    Vector x = sys.x0;
    for (std::size_t k = 0; k < k_steps; ++k) {
        Vector u(nu);
        for (std::size_t j = 0; j < nu; ++j) {
            const double mean = sys.input.mean.empty() ? 0.0 : sys.input.mean[j];
            const double var = sys.input.variance.empty() ? 0.0 : sys.input.variance[j];
            u[j] = mean + std::sqrt(std::max(0.0, var)) * rng_u.gaussian();
        }
        Vector z(nz);
        for (std::size_t j = 0; j < nx; ++j) z[j] = x[j];
        for (std::size_t j = 0; j < nu; ++j) z[nx + j] = u[j];

        const Vector w = draw_disturbance(sys.disturbance, nx, rng_w);
        Vector xn(nx);
        if (sys.linear) {
            for (std::size_t i = 0; i < nx; ++i) {
                double s = w[i];
                for (std::size_t j = 0; j < nx; ++j) s += sys.a(i, j) * x[j];
                for (std::size_t j = 0; j < nu; ++j) s += sys.b(i, j) * u[j];
                xn[i] = s;
            }
        } else {
            const Vector phi = apply_regressor_map(sys.basis, z);
            if (theta.cols() != phi.size())
                throw InputError("simulate: theta/basis dimension mismatch");
            for (std::size_t i = 0; i < nx; ++i) {
                double s = w[i];
                for (std::size_t j = 0; j < phi.size(); ++j) s += theta(i, j) * phi[j];
                xn[i] = s;
            }
        }
        if (norm_inf(xn) > kDivergenceGuard)
            throw DivergenceError("simulate: state magnitude exceeded divergence guard");

        traj.inputs.push_back(u);
        traj.disturbances.push_back(w);
        traj.regressors.push_back(z);
        traj.states.push_back(xn);
        x = xn;
    }

    if (noisy) {
        const Vector& vb = *sys.measurement_noise_bound;
        traj.noise.reserve(k_steps + 1);
        for (std::size_t k = 0; k <= k_steps; ++k) {
            Vector v(nz);
            for (std::size_t j = 0; j < nz; ++j) v[j] = rng_v.uniform(-vb[j], vb[j]);
            traj.noise.push_back(v);
        }
        traj.noisy_regressors.reserve(k_steps);
        for (std::size_t k = 0; k < k_steps; ++k)
            traj.noisy_regressors.push_back(traj.regressors[k] + traj.noise[k]);
    }
    return traj;
}

PeReport pe_check(const Trajectory& traj, std::size_t n_u_window, double beta_sq) {
    PeReport rep;
    const auto& z = traj.regressors;
    if (z.size() < n_u_window) throw InputError("pe_check: horizon shorter than window");
    const std::size_t nz = z[0].size();
    for (const Vector& zk : z) rep.b_z = std::max(rep.b_z, norm2(zk));

    rep.pass = true;
    for (std::size_t k0 = 0; k0 + n_u_window <= z.size(); ++k0) {
        Matrix gram(nz, nz);
        for (std::size_t k = k0; k < k0 + n_u_window; ++k)
            for (std::size_t i = 0; i < nz; ++i)
                for (std::size_t j = 0; j < nz; ++j) gram(i, j) += z[k][i] * z[k][j];
        for (std::size_t i = 0; i < nz; ++i)
            for (std::size_t j = 0; j < nz; ++j) gram(i, j) /= static_cast<double>(n_u_window);
        const double lmin = sym_eig_min(gram);
        rep.window_lambda_min.push_back(lmin);
        if (lmin < beta_sq) rep.pass = false;
    }
    return rep;
}

double tightness_q_uniform(double w_bar_i, double eps) {
    if (w_bar_i <= 0.0) throw InputError("tightness_q_uniform: bound must be positive");
    if (eps < 0.0) throw InputError("tightness_q_uniform: eps must be nonnegative");
    return std::min(1.0, eps / w_bar_i);
}

SignConditionReport sign_condition_diagnostic(const Trajectory& traj,
                                              const std::vector<std::vector<Vector>>& centroids,
                                              const Matrix& theta_true, double beta, double delta,
                                              std::size_t n_g, std::uint64_t seed) {
    SignConditionReport rep;
    if (n_g == 0) throw InputError("sign_condition_diagnostic: window must be positive");
    const auto& z = traj.regressors;
    if (centroids.empty() || centroids[0].size() < z.size())
        throw InputError("sign_condition_diagnostic: centroid log shorter than trajectory");
    const std::size_t nz = z.empty() ? 0 : z[0].size();

    CounterRng rng(seed, CounterRng::kProbeDirections);
    for (std::size_t start = 0; start + n_g <= z.size(); start += n_g) {
        // Probe direction on the sphere of radius delta.
        Vector theta_probe(nz);
        double nn = 0.0;
        for (std::size_t j = 0; j < nz; ++j) {
            theta_probe[j] = rng.gaussian();
            nn += theta_probe[j] * theta_probe[j];
        }
        nn = std::sqrt(nn);
        for (std::size_t j = 0; j < nz; ++j) theta_probe[j] *= delta / nn;

        bool satisfied = false;
        bool degenerate = false;
        for (std::size_t k = start; k < start + n_g; ++k) {
            const double zp = dot(z[k], theta_probe);
            if (std::fabs(zp) < beta * delta) continue;
            for (std::size_t i = 0; i < theta_true.rows() && !satisfied; ++i) {
                const Vector gk = centroids[i][k];
                const double ge = dot(z[k], gk - theta_true.row(i));
                if (std::fabs(ge) < 1e-14) {
                    degenerate = true;
                    continue;
                }
                if ((zp > 0.0) != (ge > 0.0)) satisfied = true;
            }
            if (satisfied) break;
        }
        rep.windows.push_back({start, satisfied, degenerate});
        if (satisfied) ++rep.satisfied_count;
    }
    return rep;
}

}  // namespace smi
