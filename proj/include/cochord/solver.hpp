/**
 * @file solver.hpp
 * @brief Capacity computation as a constrained dual minimization: the
 *        discretized dual functional is minimized over the path subspace by
 *        projected subgradient descent with per-iteration renormalization of
 *        the action, multistarts, and a coarse-to-fine warm-start ladder.
 *        A certificate chord is reconstructed from the stationarity
 *        multiplier.
 */
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "cochord/body.hpp"
#include "cochord/constraints.hpp"
#include "cochord/flow.hpp"
#include "cochord/frame.hpp"

namespace cochord {

struct SolveConfig {
  int N = 256;              // segment count (power of two recommended)
  int max_iters = 3000;     // per restart at the coarse level
  double tol_rel = 1e-3;    // relative objective tolerance
  int restarts = 8;
  std::uint64_t seed = 1;
  double p = 2.0;           // dual exponent
  double residual_tol = 1e-6;
  int threads = 0;          // 0: COCHORD_THREADS env or hardware count
};

struct SolveDiagnostics {
  int iterations = 0;
  double stationarity = 0.0;         // |P_F(grad ratio)| at the minimizer
  double constraint_residual = 0.0;  // max constraint violation
  double gauge_variation = 0.0;      // spread of j_D along the carrier core
  std::vector<double> restart_values;
  bool converged = false;
};

struct SolveResult {
  double capacity = 0.0;
  DiscretePath minimizer;  // action-1 path on the translated body
  Chord carrier;           // certificate chord on the original body
  Vec multiplier_a0;
  Vec normalization_shift;  // z0 used to center the body
  SolveDiagnostics diagnostics;
};

/// Thrown when no restart stabilized within the iteration budget; carries
/// the best value found, which is an upper bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string msg, SolveResult partial)
      : std::runtime_error(std::move(msg)), best(std::move(partial)) {}
  SolveResult best;
};

/// Discretized dual functional (1/N) sum_j (H*(-J N dx_j))^{p/2} and its
/// subgradient in path coordinates.
struct ObjectiveEval {
  double value = 0.0;
  Mat subgradient;  // same shape as the samples
};
ObjectiveEval objective(const Body& body, const Mat& samples, double p,
                        bool with_subgradient = true);

/// Gradient of the discrete action in path coordinates.
Mat action_gradient(const Mat& samples);

/// Interior point of body on the frame subspace (the translation that
/// centers the problem); throws std::domain_error when the body does not
/// meet the subspace.
Vec find_interior_frame_point(const Body& body, const Frame& frame);

SolveResult solve(const BodyPtr& body, const Frame& frame,
                  const SolveConfig& cfg);

/// Runs solve at each exponent; the returned capacities must agree within
/// solver tolerance.
std::map<double, double> capacity_p_consistency(const BodyPtr& body,
                                                const Frame& frame,
                                                const SolveConfig& cfg,
                                                const std::vector<double>& ps);

struct RefineResult {
  std::vector<SolveResult> levels;
  double extrapolated = 0.0;
};

/// Warm-started refinement over an increasing ladder of segment counts.
RefineResult refine(const BodyPtr& body, const Frame& frame,
                    const SolveConfig& cfg, const std::vector<int>& ladder);

/// Linear reinterpolation of a sampled path to a new segment count.
Mat resample_path(const Mat& samples, int new_segments);

}  // namespace cochord
