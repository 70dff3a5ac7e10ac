#include "smi/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smi/errors.hpp"

namespace smi {

namespace {

// Dense simplex tableau over variables [x+ (n) | x- (n) | slack (m) | art].
// Row layout: m constraint rows, then the objective row; column m+... holds b.
class Tableau {
public:
    Tableau(const Matrix& a, const Vector& b, std::size_t n_art)
        : m_(a.rows()), n_(a.cols()), n_art_(n_art),
          cols_(2 * a.cols() + a.rows() + n_art + 1),
          t_((a.rows() + 1) * cols_, 0.0), basis_(a.rows()) {}

    double& at(std::size_t r, std::size_t c) { return t_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return t_[r * cols_ + c]; }

    std::size_t m() const { return m_; }
    std::size_t total_vars() const { return cols_ - 1; }
    std::size_t rhs_col() const { return cols_ - 1; }
    std::size_t obj_row() const { return m_; }

    std::vector<std::size_t>& basis() { return basis_; }

    // Pivots on (row, col) and updates the basis.
    void pivot(std::size_t pr, std::size_t pc) {
        const double pv = at(pr, pc);
        for (std::size_t c = 0; c < cols_; ++c) at(pr, c) /= pv;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < cols_; ++c) at(r, c) -= f * at(pr, c);
        }
        basis_[pr] = pc;
    }

    // Runs the simplex on the current objective row. Returns false when the
    // problem is unbounded in the current phase.
    bool iterate(long& budget, bool& capped) {
        long stall = 0;
        double last_obj = at(obj_row(), rhs_col());
        const long bland_after = 4 * static_cast<long>(m_ + total_vars());
        while (true) {
            if (--budget <= 0) { capped = true; return true; }
            const bool bland = stall > bland_after;
            std::size_t pc = total_vars();
            double best = -kOptTol;
            for (std::size_t c = 0; c < total_vars(); ++c) {
                const double rc = at(obj_row(), c);
                if (rc < best) {
                    best = rc;
                    pc = c;
                    if (bland) break;  // first eligible index suffices
                }
            }
            if (pc == total_vars()) return true;  // optimal
            std::size_t pr = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const double col = at(r, pc);
                if (col > 1e-12) {
                    const double ratio = at(r, rhs_col()) / col;
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && (pr == m_ || basis_[r] < basis_[pr]))) {
                        best_ratio = ratio;
                        pr = r;
                    }
                }
            }
            if (pr == m_) return false;  // unbounded direction
            pivot(pr, pc);
            // The stored cell is the negated objective; progress raises it.
            const double obj = at(obj_row(), rhs_col());
            if (obj > last_obj + 1e-13) { stall = 0; last_obj = obj; } else { ++stall; }
        }
    }

private:
    std::size_t m_, n_, n_art_, cols_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

void validate(const LpProblem& p) {
    const std::size_t m = p.constraints.rows();
    const std::size_t n = p.constraints.cols();
    if (m < 1 || n < 1) throw InputError("lp_solve: empty problem");
    if (p.objective.size() != n) throw InputError("lp_solve: objective length mismatch");
    if (p.rhs.size() != m) throw InputError("lp_solve: rhs length mismatch");
    p.constraints.check_finite("lp_solve");
    check_finite(p.objective, "lp_solve");
    check_finite(p.rhs, "lp_solve");
}

LpResult solve_impl(const LpProblem& p) {
    validate(p);
    const std::size_t m = p.constraints.rows();
    const std::size_t n = p.constraints.cols();

    std::vector<std::size_t> art_rows;
    for (std::size_t r = 0; r < m; ++r)
        if (p.rhs[r] < 0.0) art_rows.push_back(r);

    Tableau tab(p.constraints, p.rhs, art_rows.size());
    const std::size_t slack0 = 2 * n;
    const std::size_t art0 = 2 * n + m;

    for (std::size_t r = 0; r < m; ++r) {
        const double sign = (p.rhs[r] < 0.0) ? -1.0 : 1.0;
        for (std::size_t c = 0; c < n; ++c) {
            tab.at(r, c) = sign * p.constraints(r, c);
            tab.at(r, n + c) = -sign * p.constraints(r, c);
        }
        tab.at(r, slack0 + r) = sign;
        tab.at(r, tab.rhs_col()) = sign * p.rhs[r];
        tab.basis()[r] = slack0 + r;
    }
    for (std::size_t k = 0; k < art_rows.size(); ++k) {
        tab.at(art_rows[k], art0 + k) = 1.0;
        tab.basis()[art_rows[k]] = art0 + k;
    }

    long budget = 20000 + 400 * static_cast<long>(m + n);
    bool capped = false;

    if (!art_rows.empty()) {
        // Phase one: minimize the sum of artificials.
        for (std::size_t k = 0; k < art_rows.size(); ++k) tab.at(tab.obj_row(), art0 + k) = 1.0;
        for (std::size_t r : art_rows)
            for (std::size_t c = 0; c <= tab.rhs_col(); ++c)
                tab.at(tab.obj_row(), c) -= tab.at(r, c);
        if (!tab.iterate(budget, capped))
            throw NumericError("lp_solve: phase one unbounded (internal)");
        if (capped) throw NumericError("lp_solve: iteration cap exceeded in phase one");
        if (tab.at(tab.obj_row(), tab.rhs_col()) < -kFeasTol)
            return {LpStatus::Infeasible, {}, 0.0};
        // Drive remaining artificials out of the basis where possible.
        for (std::size_t r = 0; r < m; ++r) {
            if (tab.basis()[r] < art0) continue;
            std::size_t pc = tab.total_vars();
            for (std::size_t c = 0; c < art0; ++c)
                if (std::fabs(tab.at(r, c)) > 1e-9) { pc = c; break; }
            if (pc != tab.total_vars()) tab.pivot(r, pc);
        }
        // Zero out artificial columns so they can never re-enter.
        for (std::size_t r = 0; r <= m; ++r)
            for (std::size_t k = 0; k < art_rows.size(); ++k) tab.at(r, art0 + k) = 0.0;
    }

    // Phase two objective: c.(x+ - x-), expressed in the current basis.
    for (std::size_t c = 0; c <= tab.rhs_col(); ++c) tab.at(tab.obj_row(), c) = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        tab.at(tab.obj_row(), c) = p.objective[c];
        tab.at(tab.obj_row(), n + c) = -p.objective[c];
    }
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t bv = tab.basis()[r];
        const double coef = tab.at(tab.obj_row(), bv);
        if (coef == 0.0) continue;
        for (std::size_t c = 0; c <= tab.rhs_col(); ++c)
            tab.at(tab.obj_row(), c) -= coef * tab.at(r, c);
    }

    if (!tab.iterate(budget, capped)) return {LpStatus::Unbounded, {}, 0.0};
    if (capped) throw NumericError("lp_solve: iteration cap exceeded");

    Vector x(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t bv = tab.basis()[r];
        if (bv < n) x[bv] += tab.at(r, tab.rhs_col());
        else if (bv < 2 * n) x[bv - n] -= tab.at(r, tab.rhs_col());
    }
    return {LpStatus::Optimal, x, dot(p.objective, x)};
}

}  // namespace

LpResult lp_solve(const LpProblem& p) { return solve_impl(p); }

LpResult lp_solve_from(const LpProblem& p, const Vector& feasible_point) {
    validate(p);
    if (feasible_point.size() != p.constraints.cols())
        throw InputError("lp_solve_from: point dimension mismatch");
    LpProblem q = p;
    const Vector hx = matvec(p.constraints, feasible_point);
    for (std::size_t r = 0; r < q.rhs.size(); ++r) {
        q.rhs[r] -= hx[r];
        // Clamp feasibility noise so the slack basis stays valid.
        if (q.rhs[r] < 0.0) {
            if (q.rhs[r] < -1e-6) throw InputError("lp_solve_from: point not feasible");
            q.rhs[r] = 0.0;
        }
    }
    LpResult res = solve_impl(q);
    if (res.status == LpStatus::Optimal) {
        res.optimizer = res.optimizer + feasible_point;
        res.value = dot(p.objective, res.optimizer);
    }
    return res;
}

}  // namespace smi
