#include "smi/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "smi/errors.hpp"

namespace smi {

namespace {

constexpr double kDegenerateSupportTol = 1e-12;

// Exact enumeration is worthwhile only while the basis count stays small;
// beyond n_z = 4 the Boeing-scale sets switch to the sampled machinery.
bool exact_path_feasible(std::size_t n_z, std::size_t rows) {
    return n_z <= 4 && rows <= kVertexRowCap;
}

std::uint64_t component_stream(std::uint64_t seed, std::size_t comp, std::size_t step) {
    return seed ^ (0x9E3779B97F4A7C15ULL * (comp + 1)) ^ (0xD1B54A32D192ED03ULL * (step + 1));
}

// Recomputes caches after the polytope changed. Policy Auto picks the exact
// route while enumeration stays cheap, otherwise LP reduction + Hit-and-Run.
void refresh_component(ComponentState& comp, const LearnerConfig& cfg, std::size_t step) {
    comp.poly = reduce(comp.poly);
    bool exact = false;
    switch (cfg.update_policy) {
        case UpdatePolicy::Exact: exact = true; break;
        case UpdatePolicy::Sampled: exact = false; break;
        case UpdatePolicy::Auto:
            exact = exact_path_feasible(comp.poly.dim(), comp.poly.rows());
            break;
    }
    if (exact) {
        const VRep v = vertices(comp.poly);
        const VolumeCentroid vc = volume_centroid_exact(comp.poly, v);
        comp.cached_vertices = v.vertices;
        comp.centroid = vc.centroid;
        comp.volume = vc.volume;
        comp.volume_std_error = 0.0;
        comp.exact_path = true;
    } else {
        const ChebyshevResult cheb = chebyshev_center(comp.poly);
        if (cheb.radius < -kFeasTol)
            throw ModelFalsifiedError("feasible set empty after update", static_cast<int>(step));
        const std::uint64_t stream = component_stream(cfg.seed, comp.index, step);
        comp.centroid = centroid_hitrun(comp.poly, cheb.center, cfg.hit_and_run.chains,
                                        cfg.hit_and_run.steps, stream);
        const McVolume mv = volume_mc(comp.poly, cfg.volume_mc_samples, stream);
        comp.cached_vertices.clear();
        comp.volume = mv.volume;
        comp.volume_std_error = mv.std_error;
        comp.exact_path = false;
    }
}

}  // namespace

void LearnerConfig::validate(std::size_t n_x) const {
    if (!(alpha0 >= -1.0 && alpha0 < 0.0))
        throw InputError("LearnerConfig: alpha0 must lie in [-1, 0)");
    if (w_bound.size() != n_x) throw InputError("LearnerConfig: w_bound length mismatch");
    for (double w : w_bound)
        if (!(w > 0.0)) throw InputError("LearnerConfig: w_bound must be positive");
    if (initial_radius <= 0.0) throw InputError("LearnerConfig: initial radius must be positive");
}

double StackedFeasibleSet::worst_case_volume() const {
    double v = 0.0;
    for (const auto& c : components) v = std::max(v, c.volume);
    return v;
}

Offsets offsets(const ComponentState& comp, const Vector& z, double x_i, double w_i) {
    if (!(w_i > 0.0)) throw InputError("offsets: disturbance bound must be positive");
    const double zg = dot(z, comp.centroid);
    const double h_plus = centered_support(comp.poly, comp.centroid, z);
    const double h_minus = centered_support(comp.poly, comp.centroid, -1.0 * z);
    const double scale = std::max(1.0, norm2(z));
    if (h_plus <= kDegenerateSupportTol * scale || h_minus <= kDegenerateSupportTol * scale)
        throw DegenerateGeometryError("offsets: polytope is flat along the regressor");
    return {(-x_i - w_i + zg) / h_plus, (x_i - w_i - zg) / h_minus, h_plus, h_minus};
}

StackedFeasibleSet make_initial_set(std::size_t n_x, std::size_t n_z,
                                    const LearnerConfig& cfg) {
    cfg.validate(n_x);
    StackedFeasibleSet s;
    s.components.reserve(n_x);
    for (std::size_t i = 0; i < n_x; ++i) {
        ComponentState comp{.index = i, .poly = HPolytope::box(n_z, cfg.initial_radius)};
        refresh_component(comp, cfg, 0);
        s.components.push_back(std::move(comp));
    }
    return s;
}

double noisy_bound(const ComponentState& comp, const Vector& v_bound, double base_w_i,
                   double v_i) {
    if (v_bound.size() != comp.poly.dim())
        throw InputError("noisy_bound: noise bound dimension mismatch");
    double zeta = 0.0;
    for (std::size_t j = 0; j < v_bound.size(); ++j) {
        if (v_bound[j] < 0.0) throw InputError("noisy_bound: noise bound must be nonnegative");
        if (v_bound[j] == 0.0) continue;
        Vector e(comp.poly.dim(), 0.0);
        e[j] = 1.0;
        const double up = support(comp.poly, e, comp.centroid);
        e[j] = -1.0;
        const double dn = support(comp.poly, e, comp.centroid);
        zeta += v_bound[j] * std::max(up, dn);
    }
    return base_w_i + v_i + zeta;
}

StepResult step(StackedFeasibleSet& s, const DataPoint& d, const LearnerConfig& cfg) {
    const std::size_t n_x = s.components.size();
    cfg.validate(n_x);
    check_finite(d.z_prev, "step: regressor");
    check_finite(d.x_next, "step: state");
    if (d.x_next.size() != n_x) throw InputError("step: state dimension mismatch");

    StepResult res;
    res.components.resize(n_x);
    const double znorm = norm2(d.z_prev);
    Vector bound_used(n_x);

    for (std::size_t i = 0; i < n_x; ++i) {
        ComponentState& comp = s.components[i];
        ComponentStepRecord& rec = res.components[i];
        double w_i = cfg.w_bound[i];
        if (cfg.v_bound)
            w_i = noisy_bound(comp, *cfg.v_bound, cfg.w_bound[i], (*cfg.v_bound)[i]);
        bound_used[i] = w_i;

        if (znorm < 1e-14) {
            // A zero regressor constrains nothing unless it is inconsistent.
            if (d.x_next[i] + w_i < 0.0 || -d.x_next[i] + w_i < 0.0)
                throw ModelFalsifiedError("zero regressor with inconsistent output",
                                          static_cast<int>(d.step));
            rec.gamma_i = false;
            rec.alpha_plus = rec.alpha_minus = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        try {
            const Offsets a = offsets(comp, d.z_prev, d.x_next[i], w_i);
            rec.alpha_plus = a.alpha_plus;
            rec.alpha_minus = a.alpha_minus;
            rec.gamma_i = sub_trigger(a.alpha_plus, a.alpha_minus, cfg.alpha0);
            // h_bar maximizes the pre-update centered supports over all steps.
            comp.hbar = std::max({comp.hbar, a.h_plus, a.h_minus});
        } catch (const DegenerateGeometryError&) {
            rec.alpha_plus = rec.alpha_minus = std::numeric_limits<double>::quiet_NaN();
            rec.degenerate = true;
            rec.gamma_i = true;  // conservative: select and let reduce clean up
        }
        res.gamma = res.gamma || rec.gamma_i;
    }

    for (std::size_t i = 0; i < n_x; ++i) {
        ComponentState& comp = s.components[i];
        if (!res.components[i].gamma_i) continue;
        HPolytope next = comp.poly.with_row(d.z_prev, d.x_next[i] + bound_used[i])
                             .with_row(-1.0 * d.z_prev, -d.x_next[i] + bound_used[i]);
        const ChebyshevResult cheb = chebyshev_center(next);
        if (cheb.radius < -kFeasTol)
            throw ModelFalsifiedError("intersection with data halfspaces is empty",
                                      static_cast<int>(d.step));
        comp.poly = std::move(next);
        refresh_component(comp, cfg, d.step);
        comp.n_sel += 1;
        comp.trigger_times.push_back(d.step);
    }
    return res;
}

RunResult run(const SystemSpec& sys, const LearnerConfig& cfg, std::size_t k_steps,
              std::uint64_t seed, const std::vector<std::size_t>& snapshot_steps) {
    const std::size_t n_x = sys.n_x();
    cfg.validate(n_x);
    const Trajectory traj = simulate(sys, k_steps, seed);
    const std::size_t n_theta = cfg.regressor_map.output_dim(sys.n_z());
    const Matrix theta = sys.theta_rows();
    if (theta.cols() != n_theta)
        throw InputError("run: true parameter dimension does not match the regressor map");

    RunResult out;
    out.trajectory = traj;
    out.w_bound_used = cfg.w_bound;
    StackedFeasibleSet s = make_initial_set(n_x, n_theta, cfg);

    RunLog& log = out.log;
    log.n_x = n_x;
    log.n_z = n_theta;
    for (const auto& c : s.components) log.initial_volumes.push_back(c.volume);

    const bool noisy = cfg.v_bound.has_value();
    if (noisy && traj.noisy_regressors.empty())
        throw InputError("run: learner expects measurement noise but the system has none");

    for (std::size_t k = 1; k <= k_steps; ++k) {
        const Vector& z_raw = noisy ? traj.noisy_regressors[k - 1] : traj.regressors[k - 1];
        Vector x_obs = traj.states[k];
        if (noisy)
            for (std::size_t i = 0; i < n_x; ++i) x_obs[i] += traj.noise[k][i];

        DataPoint d;
        d.z_prev = apply_regressor_map(cfg.regressor_map, z_raw);
        d.x_next = x_obs;
        d.step = k;

        const auto t0 = std::chrono::steady_clock::now();
        StepResult sr = step(s, d, cfg);
        const auto t1 = std::chrono::steady_clock::now();

        StepRecord rec;
        rec.step = k;
        rec.gamma = sr.gamma;
        if (sr.gamma) ++log.total_selections;
        rec.components = std::move(sr.components);
        for (std::size_t i = 0; i < n_x; ++i) {
            ComponentStepRecord& cr = rec.components[i];
            const ComponentState& comp = s.components[i];
            cr.n_sel = comp.n_sel;
            cr.volume = comp.volume;
            cr.volume_exact_path = comp.exact_path;
            cr.centroid = comp.centroid;
            const Vector theta_i = theta.row(i);
            if (comp.poly.contains(theta_i, 10.0 * kFeasTol)) {
                cr.inradius = inradius_at(comp.poly, theta_i);
                if (!comp.cached_vertices.empty()) {
                    double r = 0.0;
                    for (const Vector& v : comp.cached_vertices)
                        r = std::max(r, norm2(v - theta_i));
                    cr.radius = r;
                }
            }
        }
        const auto t2 = std::chrono::steady_clock::now();
        rec.select_us =
            std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
        rec.update_us =
            std::chrono::duration_cast<std::chrono::microseconds>(t2 - t1).count();
        log.steps.push_back(std::move(rec));

        if (std::find(snapshot_steps.begin(), snapshot_steps.end(), k) != snapshot_steps.end())
            out.snapshots.emplace(k, s);
    }
    out.final_state = std::move(s);
    return out;
}

}  // namespace smi
