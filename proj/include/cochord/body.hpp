/**
 * @file body.hpp
 * @brief Algebraic convex-body expressions with evaluable support function,
 *        Minkowski gauge, squared-gauge Legendre dual, subgradients, volume
 *        and mean width.
 *
 * Leaves: elliptic balls, round balls, coordinate boxes, polydiscs and
 * vertex polytopes.  Combinators: symplectic product, Lagrangian product,
 * polar, Firey p-sum, scaling, translation and difference symmetrization.
 * Trees are immutable and shared; every evaluation is pure.
 */
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cochord/body_visitor.hpp"
#include "cochord/frame.hpp"

namespace cochord {

/// Value of a 1-homogeneous convex function together with a subgradient g
/// satisfying the Euler identity f(w) = <g, w> and f(u) >= <g, u>.
struct GaugeEval {
  double value = 0.0;
  Vec subgradient;
};

class Body;
using BodyPtr = std::shared_ptr<const Body>;

class Body {
 public:
  virtual ~Body() = default;

  /// Ambient real dimension of the body.
  virtual int dim() const = 0;

  /// Support function h(w) = sup_{x in D} <x, w> with a supporting point
  /// as subgradient.
  virtual GaugeEval support(const Vec& w) const = 0;

  /// Minkowski gauge j(z) = inf{ t > 0 : z/t in D }.  Requires 0 in the
  /// interior.  Subgradient g satisfies j(z) = <g, z>, j(u) >= <g, u>.
  virtual GaugeEval gauge(const Vec& z) const;

  /// Membership of the closed body.
  virtual bool contains(const Vec& z, double tol = 1e-12) const;

  /// Closed-form volume when available.
  virtual std::optional<double> exact_volume() const { return std::nullopt; }

  /// Structural central-symmetry flag (false negatives possible for trees
  /// that happen to be symmetric; never a false positive).
  virtual bool centrally_symmetric() const { return false; }

  /// Short identifier used in serialized output.
  virtual std::string kind() const = 0;

  virtual void accept(BodyVisitor& v) const = 0;

  /// Smooth overestimating surrogate for continuation: polyhedral vertex
  /// maxima are replaced by their q-norm, which is convex, 1-homogeneous,
  /// and decreases to the exact support as q grows.  Returns nullptr when
  /// nothing in the tree is polyhedral.
  virtual BodyPtr smoothed(double q) const {
    (void)q;
    return nullptr;
  }
};

// ---- Leaves ---------------------------------------------------------------

/// { x in R^d : sum x_i^2 / a_i^2 < 1 }.
BodyPtr make_elliptic_ball(const Vec& axes);

/// Symplectic ellipsoid E(r_1..r_n) in R^{2n}: axes (r, r) duplicated.
BodyPtr make_ellipsoid(const Vec& radii);

/// Euclidean ball of radius R centered at c.
BodyPtr make_ball(const Vec& center, double radius);
BodyPtr make_ball(int dim, double radius);  // centered at 0

/// Last-coordinate offset ball B^{2n}((0..0,a), R).
BodyPtr make_offcenter_ball(int n, double a, double radius);

/// Product of coordinate intervals (lo_i, hi_i) in R^d.
BodyPtr make_interval_box(const std::vector<std::pair<double, double>>& bounds);

/// Symplectic box prod_i (a_i,b_i) x (-c_i,d_i) in R^{2n}; quadruples
/// (a_i, b_i, c_i, d_i) with a_i < b_i, c_i > 0, d_i > 0.
BodyPtr make_box(const std::vector<std::array<double, 4>>& quads);

/// P^{2n}(r_1..r_n) = B^2(r_1) x ... x B^2(r_n), paired coords (q_i, p_i).
BodyPtr make_polydisc(const Vec& radii);

/// Convex hull of a vertex list (columns of V).
BodyPtr make_vertex_polytope(const Mat& vertices, bool centrally_symmetric);

/// Cube [-h, h]^d and its polar cross-polytope.
BodyPtr make_cube(int dim, double half_width);
BodyPtr make_cross_polytope(int dim, double scale);

// ---- Combinators ----------------------------------------------------------

/// Symplectic product: coordinates interleave as (q^(1), q^(2), p^(1), p^(2)).
/// Both factors must have even dimension.
BodyPtr make_product(BodyPtr left, BodyPtr right);

/// Lagrangian product Q x P in R^{2n}: Q supplies the q-block, P the p-block.
BodyPtr make_lagrangian_product(BodyPtr q_body, BodyPtr p_body);

/// Polar body { y : <x, y> <= 1 for all x in D }; D must contain 0 interior.
BodyPtr make_polar(BodyPtr body);

/// Firey p-sum with support (h_D^p + h_K^p)^{1/p}; both must contain 0.
BodyPtr make_psum(double p, BodyPtr left, BodyPtr right);

BodyPtr make_scale(double factor, BodyPtr body);
BodyPtr make_translate(const Vec& shift, BodyPtr body);

/// D - D.
BodyPtr make_symm_diff(BodyPtr body);

// ---- Derived evaluations ---------------------------------------------------

/// Legendre dual of the squared gauge: H*(w) = (h(w)/2)^2 with subgradient
/// (h(w)/2) * dh(w).  Evaluated from the support function, never by a
/// numerical transform.
GaugeEval legendre_dual(const Body& body, const Vec& w);

/// Per-axis bound |x_i| <= b_i valid on the body, from support evaluations.
Vec bounding_radii(const Body& body);

struct VolumeResult {
  double value = 0.0;
  double stderr_est = 0.0;  // 0 for exact mode
};

/// Exact volume where a closed form exists, otherwise throws.
VolumeResult volume_exact(const Body& body);

/// Monte Carlo volume over the support bounding box.  samples >= 1000.
VolumeResult volume_monte_carlo(const Body& body, std::uint64_t seed,
                                std::int64_t samples);

/// Volume of { x in D : sign * x_d >= 0 } with x_d the last coordinate.
/// Exact for symmetric leaves and offset balls, Monte Carlo otherwise.
VolumeResult volume_half(const Body& body, int sign, std::uint64_t seed = 7,
                         std::int64_t samples = 400000);

/// Mean width of the symmetrization (K + (-K))/2 of a body in R^d,
/// Monte Carlo over uniform sphere directions.
double mean_width_symmetrized(const Body& body, std::uint64_t seed,
                              std::int64_t samples);

/// Interior test helper: strictly inside up to margin.
bool contains_origin_interior(const Body& body, double margin = 1e-9);

}  // namespace cochord
