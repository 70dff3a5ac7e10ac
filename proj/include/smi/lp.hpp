#pragma once

#include <optional>

#include "smi/numerics.hpp"

namespace smi {

/// minimize objective . x  subject to  constraints x <= rhs,  x free.
struct LpProblem {
    Vector objective;
    Matrix constraints;
    Vector rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector optimizer;  // present iff Optimal
    double value = 0.0;
};

inline constexpr double kFeasTol = 1e-8;
inline constexpr double kOptTol = 1e-8;

/// Two-phase dense simplex. Dantzig pricing with Bland's rule as the
/// anti-cycling fallback; ratio-test ties break to the lowest index.
LpResult lp_solve(const LpProblem& p);

/// Same solver, but translates coordinates so that `feasible_point`
/// (which must satisfy the constraints) maps to the origin. Phase one is
/// then trivial, which matters in hot loops with many-row polytopes.
LpResult lp_solve_from(const LpProblem& p, const Vector& feasible_point);

}  // namespace smi
