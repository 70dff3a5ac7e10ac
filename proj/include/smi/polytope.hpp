#pragma once

#include <cstdint>
#include <vector>

#include "smi/lp.hpp"
#include "smi/numerics.hpp"

namespace smi {

inline constexpr double kGeoTol = 1e-7;       // set-equality tolerance
inline constexpr double kRedundancyTol = 1e-9;
inline constexpr double kDedupTol = 1e-7;     // relative to diameter
inline constexpr std::size_t kVertexDimCap = 7;
inline constexpr std::size_t kVertexRowCap = 48;

/// Bounded convex polyhedron {x : Hx <= c}. Rows are normalized to unit
/// Euclidean norm at construction, which leaves the point set unchanged and
/// gives all tolerances a uniform geometric meaning.
class HPolytope {
public:
    HPolytope(Matrix h, Vector c);

    /// Axis-aligned box {|x_i| <= radius}.
    static HPolytope box(std::size_t dim, double radius);

    std::size_t dim() const { return h_.cols(); }
    std::size_t rows() const { return h_.rows(); }
    const Matrix& normals() const { return h_; }
    const Vector& offsets() const { return c_; }
    Vector normal(std::size_t r) const { return h_.row(r); }
    double offset(std::size_t r) const { return c_[r]; }

    bool contains(const Vector& x, double tol = kFeasTol) const;

    /// Appends one inequality row . x <= rhs (normalized internally).
    HPolytope with_row(const Vector& row, double rhs) const;
    HPolytope without_row(std::size_t r) const;

private:
    Matrix h_;
    Vector c_;
};

struct VRep {
    std::vector<Vector> vertices;
};

/// h_P(xi) = max over P of <x, xi>, by one LP. Throws on unbounded direction.
double support(const HPolytope& p, const Vector& xi);
/// Warm-started variant; `inside` must be feasible in P.
double support(const HPolytope& p, const Vector& xi, const Vector& inside);

/// Centered support h~_P(xi) = h_P(xi) - <g, xi>. Requires g in P.
double centered_support(const HPolytope& p, const Vector& g, const Vector& xi);

/// Chebyshev center and radius via one LP. radius < 0 means the set is empty.
struct ChebyshevResult {
    Vector center;
    double radius;
};
ChebyshevResult chebyshev_center(const HPolytope& p);

/// Row is redundant iff dropping it leaves the point set unchanged.
bool is_redundant(const HPolytope& p, std::size_t row_index);

/// Removes every redundant row (sequential single-pass, deterministic order).
HPolytope reduce(const HPolytope& p);

/// Enumerates all vertices from n-row bases. Caps: dim <= 7, rows <= 48.
VRep vertices(const HPolytope& p);

/// Lebesgue volume from a simplicial decomposition of the vertex hull.
double volume_exact(const HPolytope& p);

struct McVolume {
    double volume;
    double std_error;
};
/// Rejection estimate over the support-function bounding box.
McVolume volume_mc(const HPolytope& p, std::size_t samples, std::uint64_t seed);

/// Volume-weighted centroid from the same decomposition as volume_exact.
Vector centroid_exact(const HPolytope& p);

/// Hit-and-Run estimate of the centroid. g0 must be strictly interior.
Vector centroid_hitrun(const HPolytope& p, const Vector& g0, std::size_t chains,
                       std::size_t steps, std::uint64_t seed);

/// max over vertices of ||theta - v||_2 (outer radius at theta).
double radius_at(const HPolytope& p, const Vector& theta);

/// min over rows of (c_i - H_i.theta); exact inradius since rows are unit.
double inradius_at(const HPolytope& p, const Vector& theta);

/// Euclidean distance from a point to the polytope (Hildreth projection).
double distance_to(const HPolytope& p, const Vector& x);

struct HausdorffResult {
    double value;
    bool is_lower_bound;  // true when the sampled-direction fallback was used
};
/// Hausdorff distance for nested sets (inner subset of outer). Exact via
/// outer-vertex projections when caps allow, else a support-gap lower bound.
HausdorffResult hausdorff_nested(const HPolytope& outer, const HPolytope& inner,
                                 std::size_t directions, std::uint64_t seed);

/// Exact volume and centroid in one pass (shared decomposition).
struct VolumeCentroid {
    double volume;
    Vector centroid;
};
VolumeCentroid volume_centroid_exact(const HPolytope& p, const VRep& v);

}  // namespace smi
