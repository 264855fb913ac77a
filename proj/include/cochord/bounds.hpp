/**
 * @file bounds.hpp
 * @brief Inequality and comparison checks layered over the closed forms and
 *        the solver: the J-norm upper bound, the p-sum superadditivity of
 *        square-root capacities, the mixed derivative bracket, the
 *        half-versus-full capacity sandwich, the inscribed-ball lower bound,
 *        the half-volume ratio, and the mean-width product bound.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cochord/body.hpp"
#include "cochord/closed_forms.hpp"
#include "cochord/solver.hpp"

namespace cochord {

struct InequalityReport {
  std::string formula_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // oriented: >= -tol means the inequality holds
  bool holds = false;
  double tol = 0.0;
  std::string inputs;
};

/// Capacity with a method tag and a bracket.  method: "auto" picks the
/// closed form when the body is recognized and the solver otherwise;
/// "closed_form" and "solver" force one route; "flow" uses the chord
/// computation (ellipsoids and off-center balls only).
struct CapacityResult {
  double value = 0.0;
  std::string method;      // closed-form | dual-solver | flow
  std::string formula_id;  // set for closed forms
  double lower = 0.0;      // bound bracket
  double upper = 0.0;
  std::optional<Chord> carrier;
};

CapacityResult compute_capacity(const BodyPtr& body, const Frame& frame,
                                const SolveConfig& cfg,
                                const std::string& method = "auto");

/// Checked central symmetry: h(w) = h(-w) on sampled directions.
bool sampled_centrally_symmetric(const Body& body, double tol = 1e-9);

/// Checked invariance under (q,p) -> (q,-p).
bool sampled_tau0_invariant(const Body& body, double tol = 1e-9);

struct JNormOptions {
  int grid = 512;          // angular grid size per sweep
  int refine_iters = 60;   // local refinement steps
  bool wrap_symm_diff = false;  // apply the D - D wrapper first
};

/// capacity <= 2 / norm with the norm maximized over the leafwise-transverse
/// momentum subspace.
InequalityReport j_norm_upper_bound(const BodyPtr& body, const Frame& frame,
                                    const SolveConfig& cfg,
                                    const JNormOptions& opt = {});

/// The operator norm itself (exact for ellipsoids, angular search otherwise).
double j_transverse_norm(const BodyPtr& body, const Frame& frame,
                         const JNormOptions& opt = {});

/// (c(D +_p K))^{p/2} >= c(D)^{p/2} + c(K)^{p/2}.
InequalityReport brunn_minkowski_check(const BodyPtr& D, const BodyPtr& K,
                                       double p, const Frame& frame,
                                       const SolveConfig& cfg);

struct DkResult {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> quotients;  // per epsilon, largest first
  bool bracket_holds = false;
};

/// Finite-difference derivative of eps -> c(D + eps K) at 0+ with the
/// two-sided bracket from the capacities and the carrier integral.
DkResult dk_derivative(const BodyPtr& D, const BodyPtr& K, const Frame& frame,
                       const SolveConfig& cfg,
                       const std::vector<double>& eps_ladder = {0.2, 0.1,
                                                               0.05});

/// (1/2) c_per <= c_k <= c_per for bodies invariant under (q,p) -> (q,-p),
/// where c_per is the k = n capacity.
InequalityReport sandwich_check(const BodyPtr& body, const Frame& frame,
                                const SolveConfig& cfg);

/// pi r^2 / 2 <= capacity for the largest ball centered on the frame
/// subspace and contained in the body.
InequalityReport inscribed_ball_lower_bound(const BodyPtr& body,
                                            const Frame& frame,
                                            const SolveConfig& cfg);

/// Largest r with B(z, r) inside the body over centers z on the frame
/// subspace (reported conservatively).
double inscribed_frame_ball_radius(const BodyPtr& body, const Frame& frame);

/// capacity^n / (n! min(Vol^+, Vol^-)) <= 1 at k = n - 1; an empirical
/// check of the conjectured volume bound.
InequalityReport viterbo_ratio(const BodyPtr& body, const Frame& frame,
                               const SolveConfig& cfg, bool exact_volume_only
                               = false, std::uint64_t mc_seed = 11,
                               std::int64_t mc_samples = 400000);

/// capacity(Q x P) <= 2 r_Q r_P at k = 0 for Q in the q-block and centrally
/// symmetric P in the p-block.
InequalityReport mean_width_bound(const BodyPtr& q_body, const BodyPtr& p_body,
                                  const SolveConfig& cfg,
                                  std::uint64_t mc_seed = 13,
                                  std::int64_t mc_samples = 200000);

}  // namespace cochord
