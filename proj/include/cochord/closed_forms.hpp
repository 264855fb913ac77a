/**
 * @file closed_forms.hpp
 * @brief Exact capacity values for the body classes that admit them:
 *        ellipsoids, off-center balls, polydiscs, boxes, products,
 *        Lagrangian products of a symmetric body with its polar, and the
 *        documented constants for the unbounded model domains.
 *
 * These are the ground truth the variational solver is tested against.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cochord/body.hpp"
#include "cochord/frame.hpp"

namespace cochord {

struct ClosedFormResult {
  double value = 0.0;
  std::string formula_id;
  std::vector<std::string> assumptions;
};

/// min over an empty index set is +infinity; one formula covers all k.
/// k = n returns the periodic capacity of the ellipsoid.
ClosedFormResult ellipsoid_capacity(const Frame& frame, const Vec& radii);

/// Ball of radius R centered at distance a along the last momentum axis,
/// k < n.  Independent of k.
ClosedFormResult offcenter_ball_capacity(const Frame& frame, double a,
                                         double R);

ClosedFormResult polydisc_capacity(const Frame& frame, const Vec& radii);

/// Quadruples (a_i, b_i, c_i, d_i) for the box prod (a_i,b_i) x (-c_i,d_i).
ClosedFormResult box_capacity(const Frame& frame,
                              const std::vector<std::array<double, 4>>& quads);

/// A factor with a closed-form capacity at every index 0..n_i.
struct ProductFactor {
  int n = 1;
  std::function<double(int)> capacity_at;  // index -> value
  std::string label;
};

/// Product recursion: l_0 = k, l_j = max(l_{j-1} - n_j, 0); the value is the
/// minimum of the factor capacities at index min(n_i, l_{i-1}).
ClosedFormResult product_capacity(const Frame& frame,
                                  const std::vector<ProductFactor>& factors);

/// Capacity of Delta x Delta° for a centrally symmetric polytope Delta in
/// R^n_q: 2 for every k < n, 4 for k = n.
ClosedFormResult lagrangian_product_capacity(const Frame& frame,
                                             const BodyPtr& delta);

enum class KnownDomain { W_domain, U_domain };

/// The unbounded model domains have capacity pi/2 at scale 1 (k < n only);
/// scale multiplies the value by scale^2.
ClosedFormResult known_constants(KnownDomain id, const Frame& frame,
                                 double scale = 1.0);

/// Attempt to match a body expression against the closed-form catalog for
/// the given frame; returns the value if recognized.
std::optional<ClosedFormResult> try_closed_form(const BodyPtr& body,
                                                const Frame& frame);

struct CatalogEntry {
  std::string name;
  BodyPtr body;
  Frame frame;
  double value = 0.0;       // expected value, or the bound
  bool bound_only = false;  // true: value is a lower bound, not an equality
  std::string relation;     // "=", ">="
};

/// The worked examples with their expected values; entries flagged
/// bound_only carry ">=" and must be asserted as inequalities.
std::vector<CatalogEntry> example_bodies_catalog();

}  // namespace cochord
