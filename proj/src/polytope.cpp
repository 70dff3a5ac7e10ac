#include "smi/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smi/errors.hpp"
#include "smi/rng.hpp"

namespace smi {

HPolytope::HPolytope(Matrix h, Vector c) : h_(std::move(h)), c_(std::move(c)) {
    if (h_.rows() != c_.size()) throw InputError("HPolytope: row/offset count mismatch");
    if (h_.rows() == 0 || h_.cols() == 0) throw InputError("HPolytope: empty system");
    h_.check_finite("HPolytope");
    check_finite(c_, "HPolytope");
    for (std::size_t r = 0; r < h_.rows(); ++r) {
        double nrm = 0.0;
        for (std::size_t j = 0; j < h_.cols(); ++j) nrm += h_(r, j) * h_(r, j);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-14) throw InputError("HPolytope: zero-norm row");
        for (std::size_t j = 0; j < h_.cols(); ++j) h_(r, j) /= nrm;
        c_[r] /= nrm;
    }
}

HPolytope HPolytope::box(std::size_t dim, double radius) {
    Matrix h(2 * dim, dim);
    Vector c(2 * dim, radius);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = 1.0;
        h(dim + i, i) = -1.0;
    }
    return HPolytope(std::move(h), std::move(c));
}

bool HPolytope::contains(const Vector& x, double tol) const {
    if (x.size() != dim()) throw InputError("HPolytope::contains: dimension mismatch");
    for (std::size_t r = 0; r < rows(); ++r) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim(); ++j) s += h_(r, j) * x[j];
        if (s > c_[r] + tol) return false;
    }
    return true;
}

HPolytope HPolytope::with_row(const Vector& row, double rhs) const {
    if (row.size() != dim()) throw InputError("HPolytope::with_row: dimension mismatch");
    Matrix h(rows() + 1, dim());
    Vector c(rows() + 1);
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t j = 0; j < dim(); ++j) h(r, j) = h_(r, j);
        c[r] = c_[r];
    }
    for (std::size_t j = 0; j < dim(); ++j) h(rows(), j) = row[j];
    c[rows()] = rhs;
    return HPolytope(std::move(h), std::move(c));
}

HPolytope HPolytope::without_row(std::size_t r) const {
    if (r >= rows()) throw InputError("HPolytope::without_row: index out of range");
    if (rows() < 2) throw InputError("HPolytope::without_row: would empty the system");
    Matrix h(rows() - 1, dim());
    Vector c(rows() - 1);
    std::size_t out = 0;
    for (std::size_t i = 0; i < rows(); ++i) {
        if (i == r) continue;
        for (std::size_t j = 0; j < dim(); ++j) h(out, j) = h_(i, j);
        c[out] = c_[i];
        ++out;
    }
    return HPolytope(std::move(h), std::move(c));
}

namespace {

LpProblem support_lp(const HPolytope& p, const Vector& xi) {
    LpProblem lp;
    lp.objective = -1.0 * xi;  // maximize <x, xi>
    lp.constraints = p.normals();
    lp.rhs = p.offsets();
    return lp;
}

}  // namespace

double support(const HPolytope& p, const Vector& xi) {
    if (xi.size() != p.dim()) throw InputError("support: direction dimension mismatch");
    const LpResult r = lp_solve(support_lp(p, xi));
    if (r.status == LpStatus::Unbounded)
        throw NumericError("support: polytope unbounded in probed direction");
    if (r.status == LpStatus::Infeasible)
        throw NumericError("support: polytope is empty");
    return -r.value;
}

double support(const HPolytope& p, const Vector& xi, const Vector& inside) {
    if (xi.size() != p.dim()) throw InputError("support: direction dimension mismatch");
    const LpResult r = lp_solve_from(support_lp(p, xi), inside);
    if (r.status == LpStatus::Unbounded)
        throw NumericError("support: polytope unbounded in probed direction");
    if (r.status == LpStatus::Infeasible)
        throw NumericError("support: polytope is empty");
    return -r.value;
}

double centered_support(const HPolytope& p, const Vector& g, const Vector& xi) {
    if (!p.contains(g, 10.0 * kFeasTol))
        throw InputError("centered_support: center point outside polytope");
    return support(p, xi, g) - dot(g, xi);
}

ChebyshevResult chebyshev_center(const HPolytope& p) {
    // Variables (x, r): maximize r subject to H x + r <= c (rows are unit norm).
    const std::size_t n = p.dim();
    const std::size_t m = p.rows();
    LpProblem lp;
    lp.objective = Vector(n + 1, 0.0);
    lp.objective[n] = -1.0;
    lp.constraints = Matrix(m + 1, n + 1);
    lp.rhs = Vector(m + 1);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < n; ++j) lp.constraints(r, j) = p.normals()(r, j);
        lp.constraints(r, n) = 1.0;
        lp.rhs[r] = p.offsets()[r];
    }
    // Keep the LP bounded when the radius direction is unconstrained.
    lp.constraints(m, n) = 1.0;
    double cmax = 0.0;
    for (std::size_t r = 0; r < m; ++r) cmax = std::max(cmax, std::fabs(p.offsets()[r]));
    lp.rhs[m] = 10.0 * (cmax + 1.0);

    // (0, r0) with r0 below every offset is always feasible.
    Vector start(n + 1, 0.0);
    double cmin = lp.rhs[m];
    for (std::size_t r = 0; r < m; ++r) cmin = std::min(cmin, p.offsets()[r]);
    start[n] = cmin - 1.0;
    const LpResult res = lp_solve_from(lp, start);
    if (res.status != LpStatus::Optimal)
        throw NumericError("chebyshev_center: radius LP unbounded (polyhedron unbounded)");
    Vector center(res.optimizer.begin(), res.optimizer.begin() + n);
    return {center, res.optimizer[n]};
}

bool is_redundant(const HPolytope& p, std::size_t row_index) {
    if (row_index >= p.rows()) throw InputError("is_redundant: index out of range");
    if (p.rows() < 2) return false;
    const HPolytope rest = p.without_row(row_index);
    // Redundant iff max over the remaining set of <h, x> stays below c.
    LpProblem lp = support_lp(rest, p.normal(row_index));
    const LpResult r = lp_solve(lp);
    if (r.status == LpStatus::Unbounded) return false;
    if (r.status == LpStatus::Infeasible)
        throw NumericError("is_redundant: remaining system infeasible");
    return -r.value <= p.offset(row_index) + kRedundancyTol;
}

HPolytope reduce(const HPolytope& p) {
    const ChebyshevResult cheb = chebyshev_center(p);
    if (cheb.radius < -kFeasTol) throw NumericError("reduce: polytope is empty");
    std::vector<std::size_t> keep(p.rows());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;

    std::size_t i = 0;
    while (i < keep.size() && keep.size() > 1) {
        std::vector<Vector> rows;
        Vector offs;
        rows.reserve(keep.size() - 1);
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if (j == i) continue;
            rows.push_back(p.normal(keep[j]));
            offs.push_back(p.offset(keep[j]));
        }
        HPolytope rest(Matrix::from_rows(rows), offs);
        LpProblem lp = support_lp(rest, p.normal(keep[i]));
        // The full set's Chebyshev center is feasible for any row subset.
        const LpResult r = lp_solve_from(lp, cheb.center);
        const bool redundant =
            r.status == LpStatus::Optimal && -r.value <= p.offset(keep[i]) + kRedundancyTol;
        if (redundant) keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(i));
        else ++i;
    }

    std::vector<Vector> rows;
    Vector offs;
    for (std::size_t k : keep) {
        rows.push_back(p.normal(k));
        offs.push_back(p.offset(k));
    }
    return HPolytope(Matrix::from_rows(rows), offs);
}

namespace {

// Iterates over all size-k index subsets of [0, m) in lexicographic order.
class Combination {
public:
    Combination(std::size_t m, std::size_t k) : m_(m), idx_(k) {
        for (std::size_t i = 0; i < k; ++i) idx_[i] = i;
        valid_ = k <= m && k > 0;
    }
    bool valid() const { return valid_; }
    const std::vector<std::size_t>& get() const { return idx_; }
    void advance() {
        const std::size_t k = idx_.size();
        std::size_t i = k;
        while (i-- > 0) {
            if (idx_[i] != m_ - k + i) {
                ++idx_[i];
                for (std::size_t j = i + 1; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
                return;
            }
        }
        valid_ = false;
    }

private:
    std::size_t m_;
    std::vector<std::size_t> idx_;
    bool valid_;
};

double diameter_estimate(const std::vector<Vector>& pts) {
    if (pts.empty()) return 1.0;
    const std::size_t n = pts[0].size();
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double lo = pts[0][j], hi = pts[0][j];
        for (const Vector& v : pts) {
            lo = std::min(lo, v[j]);
            hi = std::max(hi, v[j]);
        }
        d = std::max(d, hi - lo);
    }
    return d;
}

std::vector<Vector> dedup_points(std::vector<Vector> pts) {
    const double tol = kDedupTol * std::max(1.0, diameter_estimate(pts));
    std::vector<Vector> out;
    for (const Vector& v : pts) {
        bool dup = false;
        for (const Vector& u : out) {
            double dmax = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j)
                dmax = std::max(dmax, std::fabs(v[j] - u[j]));
            if (dmax <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(v);
    }
    return out;
}

}  // namespace

VRep vertices(const HPolytope& p) {
    const std::size_t n = p.dim();
    const std::size_t m = p.rows();
    if (n > kVertexDimCap || m > kVertexRowCap)
        throw CapacityError("vertices: dimension or row caps exceeded; use sampled methods");
    std::vector<Vector> found;
    for (Combination comb(m, n); comb.valid(); comb.advance()) {
        const auto& idx = comb.get();
        Matrix hs(n, n);
        Vector cs(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t j = 0; j < n; ++j) hs(r, j) = p.normals()(idx[r], j);
            cs[r] = p.offset(idx[r]);
        }
        const auto x = linsolve(hs, cs);
        if (!x) continue;
        if (p.contains(*x, kFeasTol)) found.push_back(*x);
    }
    VRep v;
    v.vertices = dedup_points(std::move(found));
    return v;
}

namespace {

// Simplex list: each entry is a set of dim+1 points.
using SimplexList = std::vector<std::vector<Vector>>;

std::vector<Vector> project_to_basis(const std::vector<Vector>& pts, const Vector& origin,
                                     const std::vector<Vector>& basis) {
    std::vector<Vector> out;
    out.reserve(pts.size());
    for (const Vector& v : pts) {
        Vector y(basis.size());
        const Vector d = v - origin;
        for (std::size_t j = 0; j < basis.size(); ++j) y[j] = dot(basis[j], d);
        out.push_back(y);
    }
    return out;
}

// Orthonormal basis of the hyperplane with unit normal `normal`.
std::vector<Vector> hyperplane_basis(const Vector& normal) {
    const std::size_t n = normal.size();
    std::vector<Vector> basis;
    for (std::size_t e = 0; e < n && basis.size() < n - 1; ++e) {
        Vector v(n, 0.0);
        v[e] = 1.0;
        double a = dot(v, normal);
        for (std::size_t j = 0; j < n; ++j) v[j] -= a * normal[j];
        for (const Vector& b : basis) {
            const double c = dot(v, b);
            for (std::size_t j = 0; j < n; ++j) v[j] -= c * b[j];
        }
        const double nv = norm2(v);
        if (nv > 1e-9) basis.push_back((1.0 / nv) * v);
    }
    return basis;
}

// Triangulates the convex hull of a full-dimensional point set. Points are
// assumed deduplicated. Dimension 1 and 2 are handled directly; higher
// dimensions recurse over facets identified by the reduced H-representation.
SimplexList triangulate_hull(const std::vector<Vector>& pts, const HPolytope& reduced);

SimplexList triangulate_polygon(const std::vector<Vector>& pts) {
    // Sort angularly around the mean, then fan from vertex 0.
    const std::size_t n = pts.size();
    Vector mean(2, 0.0);
    for (const Vector& v : pts) mean = mean + v;
    mean = (1.0 / static_cast<double>(n)) * mean;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> ang(n);
    for (std::size_t i = 0; i < n; ++i)
        ang[i] = std::atan2(pts[i][1] - mean[1], pts[i][0] - mean[0]);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
    SimplexList out;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out.push_back({pts[order[0]], pts[order[i]], pts[order[i + 1]]});
    return out;
}

SimplexList triangulate_hull(const std::vector<Vector>& pts, const HPolytope& reduced) {
    const std::size_t n = pts.empty() ? 0 : pts[0].size();
    if (pts.size() < n + 1) return {};  // not full-dimensional
    if (n == 1) {
        auto mm = std::minmax_element(pts.begin(), pts.end(),
                                      [](const Vector& a, const Vector& b) { return a[0] < b[0]; });
        return {{*mm.first, *mm.second}};
    }
    if (n == 2) return triangulate_polygon(pts);

    Vector apex(n, 0.0);
    for (const Vector& v : pts) apex = apex + v;
    apex = (1.0 / static_cast<double>(pts.size())) * apex;

    const double scale = std::max(1.0, diameter_estimate(pts));
    SimplexList out;
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        const Vector h = reduced.normal(r);
        const double c = reduced.offset(r);
        std::vector<Vector> facet_pts;
        for (const Vector& v : pts)
            if (std::fabs(dot(h, v) - c) <= 1e-7 * scale) facet_pts.push_back(v);
        if (facet_pts.size() < n) continue;

        const std::vector<Vector> basis = hyperplane_basis(h);
        const Vector origin = facet_pts[0];
        const std::vector<Vector> local = project_to_basis(facet_pts, origin, basis);

        // H-representation of the facet in local coordinates, then reduce.
        std::vector<Vector> frows;
        Vector foffs;
        for (std::size_t q = 0; q < reduced.rows(); ++q) {
            if (q == r) continue;
            const Vector hq = reduced.normal(q);
            Vector lrow(basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j) lrow[j] = dot(hq, basis[j]);
            if (norm2(lrow) < 1e-10) continue;  // parallel to the facet
            frows.push_back(lrow);
            foffs.push_back(reduced.offset(q) - dot(hq, origin));
        }
        SimplexList facet_simplices;
        if (frows.empty()) {
            facet_simplices = triangulate_hull(local, HPolytope::box(basis.size(), 1.0));
        } else {
            HPolytope facet_poly = reduce(HPolytope(Matrix::from_rows(frows), foffs));
            facet_simplices = triangulate_hull(dedup_points(local), facet_poly);
        }
        for (const auto& fs : facet_simplices) {
            std::vector<Vector> lifted;
            lifted.reserve(n + 1);
            for (const Vector& y : fs) {
                Vector x = origin;
                for (std::size_t j = 0; j < basis.size(); ++j)
                    for (std::size_t k = 0; k < n; ++k) x[k] += y[j] * basis[j][k];
                lifted.push_back(x);
            }
            lifted.push_back(apex);
            out.push_back(std::move(lifted));
        }
    }
    return out;
}

double simplex_volume(const std::vector<Vector>& s) {
    const std::size_t n = s.size() - 1;
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) m(r, j) = s[r][j] - s[n][j];
    // |det| via LU without the singularity cutoff used by linsolve.
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
        if (m(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(m(piv, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    double fact = 1.0;
    for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<double>(i);
    return std::fabs(det) / fact;
}

}  // namespace

VolumeCentroid volume_centroid_exact(const HPolytope& p, const VRep& v) {
    const std::size_t n = p.dim();
    if (v.vertices.size() < n + 1) {
        // Flat or lower-dimensional: zero volume, centroid = vertex mean.
        Vector g(n, 0.0);
        if (!v.vertices.empty()) {
            for (const Vector& x : v.vertices) g = g + x;
            g = (1.0 / static_cast<double>(v.vertices.size())) * g;
        }
        return {0.0, g};
    }
    const HPolytope reduced = reduce(p);
    const SimplexList simplices = triangulate_hull(v.vertices, reduced);
    double vol = 0.0;
    Vector cen(n, 0.0);
    for (const auto& s : simplices) {
        const double dv = simplex_volume(s);
        if (dv <= 0.0) continue;
        Vector sc(n, 0.0);
        for (const Vector& x : s) sc = sc + x;
        sc = (1.0 / static_cast<double>(n + 1)) * sc;
        vol += dv;
        for (std::size_t j = 0; j < n; ++j) cen[j] += dv * sc[j];
    }
    if (vol > 0.0) cen = (1.0 / vol) * cen;
    else {
        cen = Vector(n, 0.0);
        for (const Vector& x : v.vertices) cen = cen + x;
        cen = (1.0 / static_cast<double>(v.vertices.size())) * cen;
    }
    return {vol, cen};
}

double volume_exact(const HPolytope& p) {
    return volume_centroid_exact(p, vertices(p)).volume;
}

Vector centroid_exact(const HPolytope& p) {
    return volume_centroid_exact(p, vertices(p)).centroid;
}

McVolume volume_mc(const HPolytope& p, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = p.dim();
    Vector lo(n), hi(n);
    const ChebyshevResult cheb = chebyshev_center(p);
    if (cheb.radius < -kFeasTol) throw NumericError("volume_mc: polytope is empty");
    for (std::size_t j = 0; j < n; ++j) {
        Vector e(n, 0.0);
        e[j] = 1.0;
        hi[j] = support(p, e, cheb.center);
        e[j] = -1.0;
        lo[j] = -support(p, e, cheb.center);
    }
    double box_vol = 1.0;
    for (std::size_t j = 0; j < n; ++j) box_vol *= std::max(0.0, hi[j] - lo[j]);
    if (box_vol <= 0.0) return {0.0, 0.0};

    CounterRng rng(seed, CounterRng::kVolumeMc);
    std::size_t hits = 0;
    Vector x(n);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t j = 0; j < n; ++j) x[j] = rng.uniform(lo[j], hi[j]);
        if (p.contains(x, 0.0)) ++hits;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    const double se =
        box_vol * std::sqrt(std::max(0.0, frac * (1.0 - frac) / static_cast<double>(samples)));
    return {box_vol * frac, se};
}

Vector centroid_hitrun(const HPolytope& p, const Vector& g0, std::size_t chains,
                       std::size_t steps, std::uint64_t seed) {
    const std::size_t n = p.dim();
    if (g0.size() != n) throw InputError("centroid_hitrun: start dimension mismatch");
    if (!p.contains(g0, -1e-12)) {
        // Must be strictly interior; allow exactly-on-boundary starts only for
        // degenerate point boxes, which the walk handles by staying put.
        if (!p.contains(g0, kFeasTol))
            throw InputError("centroid_hitrun: start point not inside polytope");
    }
    CounterRng rng(seed, CounterRng::kHitAndRun);
    const std::size_t burn = steps / 4;
    Vector mean(n, 0.0);
    std::size_t count = 0;
    for (std::size_t chain = 0; chain < chains; ++chain) {
        Vector x = g0;
        for (std::size_t s = 0; s < steps; ++s) {
            Vector d(n);
            double nd = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                d[j] = rng.gaussian();
                nd += d[j] * d[j];
            }
            nd = std::sqrt(nd);
            if (nd < 1e-300) continue;
            for (std::size_t j = 0; j < n; ++j) d[j] /= nd;
            // Exact chord extents from the H-representation.
            double tmin = -std::numeric_limits<double>::infinity();
            double tmax = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < p.rows(); ++r) {
                double hd = 0.0, hx = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    hd += p.normals()(r, j) * d[j];
                    hx += p.normals()(r, j) * x[j];
                }
                const double slack = p.offset(r) - hx;
                if (hd > 1e-14) tmax = std::min(tmax, slack / hd);
                else if (hd < -1e-14) tmin = std::max(tmin, slack / hd);
                else if (slack < -kFeasTol) { tmax = tmin; }
            }
            if (!(tmax > tmin)) continue;  // degenerate chord
            const double t = rng.uniform(tmin, tmax);
            for (std::size_t j = 0; j < n; ++j) x[j] += t * d[j];
            if (s >= burn) {
                for (std::size_t j = 0; j < n; ++j) mean[j] += x[j];
                ++count;
            }
        }
    }
    if (count == 0) return g0;
    return (1.0 / static_cast<double>(count)) * mean;
}

double radius_at(const HPolytope& p, const Vector& theta) {
    if (theta.size() != p.dim()) throw InputError("radius_at: dimension mismatch");
    const VRep v = vertices(p);
    double r = 0.0;
    for (const Vector& x : v.vertices) r = std::max(r, norm2(x - theta));
    return r;
}

double inradius_at(const HPolytope& p, const Vector& theta) {
    if (theta.size() != p.dim()) throw InputError("inradius_at: dimension mismatch");
    if (!p.contains(theta, kFeasTol)) throw InputError("inradius_at: point outside polytope");
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.dim(); ++j) s += p.normals()(i, j) * theta[j];
        r = std::min(r, p.offset(i) - s);
    }
    return std::max(0.0, r);
}

double distance_to(const HPolytope& p, const Vector& x) {
    if (x.size() != p.dim()) throw InputError("distance_to: dimension mismatch");
    if (p.contains(x, 0.0)) return 0.0;
    // Hildreth dual coordinate iteration for the projection onto {Hy <= c}.
    const std::size_t m = p.rows();
    const std::size_t n = p.dim();
    Vector lambda(m, 0.0);
    Vector y = x;
    const double tol = 1e-9;
    const std::size_t max_sweeps = 100000 / std::max<std::size_t>(1, m) + 100;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double change = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double viol = -p.offset(i);
            for (std::size_t j = 0; j < n; ++j) viol += p.normals()(i, j) * y[j];
            // Rows are unit-norm, so the step equals the signed violation,
            // clipped so multipliers stay nonnegative.
            const double delta = std::max(-lambda[i], viol);
            if (delta != 0.0) {
                lambda[i] += delta;
                for (std::size_t j = 0; j < n; ++j) y[j] -= delta * p.normals()(i, j);
                change = std::max(change, std::fabs(delta));
            }
        }
        if (change < tol) break;
    }
    return norm2(x - y);
}

HausdorffResult hausdorff_nested(const HPolytope& outer, const HPolytope& inner,
                                 std::size_t directions, std::uint64_t seed) {
    if (outer.dim() != inner.dim())
        throw InputError("hausdorff_nested: dimension mismatch");
    // Containment precondition: every inner vertex feasible in outer.
    bool checked = false;
    try {
        const VRep vi = vertices(inner);
        checked = true;
        for (const Vector& v : vi.vertices)
            if (!outer.contains(v, 100.0 * kFeasTol))
                throw InputError("hausdorff_nested: inner set not contained in outer");
    } catch (const CapacityError&) {
        // fall through to the sampled check below
    }
    try {
        const VRep vo = vertices(outer);
        double d = 0.0;
        for (const Vector& v : vo.vertices) d = std::max(d, distance_to(inner, v));
        return {d, false};
    } catch (const CapacityError&) {
        // Sampled lower bound: max support gap over random unit directions.
        CounterRng rng(seed, CounterRng::kProbeDirections);
        const std::size_t n = outer.dim();
        if (!checked) {
            // Support dominance spot-check in lieu of the vertex test.
            for (std::size_t j = 0; j < n; ++j) {
                Vector e(n, 0.0);
                e[j] = 1.0;
                if (support(inner, e) > support(outer, e) + 100.0 * kFeasTol)
                    throw InputError("hausdorff_nested: inner set not contained in outer");
            }
        }
        double d = 0.0;
        for (std::size_t s = 0; s < directions; ++s) {
            Vector u(n);
            double nu = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                u[j] = rng.gaussian();
                nu += u[j] * u[j];
            }
            nu = std::sqrt(nu);
            if (nu < 1e-300) continue;
            for (std::size_t j = 0; j < n; ++j) u[j] /= nu;
            d = std::max(d, support(outer, u) - support(inner, u));
        }
        return {d, true};
    }
}

}  // namespace smi
