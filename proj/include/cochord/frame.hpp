/**
 * @file frame.hpp
 * @brief Linear-symplectic primitives: the standard complex structure,
 *        coisotropic frames, their coordinate subspaces, and the discrete
 *        symplectic action of sampled paths.
 */
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace cochord {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A pair (n, k), 0 <= k <= n, fixing the coisotropic subspace of R^{2n}
/// spanned by (q_1..q_n, p_1..p_k) together with its leaf structure.
/// k = n is the periodic frame, k = 0 the Lagrangian one.
struct Frame {
  int n = 1;
  int k = 0;

  Frame() = default;
  Frame(int n_, int k_) : n(n_), k(k_) {
    if (n < 1) throw std::invalid_argument("Frame: n must be positive");
    if (k < 0 || k > n) throw std::invalid_argument("Frame: need 0 <= k <= n");
  }

  int ambient_dim() const { return 2 * n; }      // dim R^{2n}
  int coiso_dim() const { return n + k; }        // dim of the frame subspace
  int leaf_dim() const { return n - k; }         // dim V_0
  int v1_dim() const { return 2 * k; }           // dim V_1
  bool periodic() const { return k == n; }
  bool lagrangian() const { return k == 0; }

  bool operator==(const Frame& o) const { return n == o.n && k == o.k; }
};

enum class Subspace { Rnk, V0, V1, JV0 };

/// J(q, p) = (-p, q).
Vec apply_J(const Vec& v);

/// In-place J applied to every column of a 2n x m matrix.
void apply_J_cols(Mat& cols);

/// Orthogonal projection of v onto the requested coordinate subspace.
Vec project(const Frame& frame, Subspace sub, const Vec& v);

/// Distance from v to the frame subspace (norm of the J V_0 component).
double dist_to_frame(const Frame& frame, const Vec& v);

/// x ~ y iff y - x lies in V_0 (same leaf).  Both points must lie on the
/// frame subspace within tol * max(1, |x|, |y|); otherwise throws.
bool leaf_equivalent(const Frame& frame, const Vec& x, const Vec& y,
                     double tol = 1e-9);

/// N+1 uniform samples of a path [0,1] -> R^{2n}, stored as columns.
/// Segment velocities are N * (x_{j+1} - x_j).
struct DiscretePath {
  Frame frame;
  Mat samples;  // 2n x (N+1)

  DiscretePath() = default;
  DiscretePath(Frame f, Mat s);

  int segments() const { return static_cast<int>(samples.cols()) - 1; }
};

/// Discrete symplectic action (1/2) sum_j <-J dx_j, midpoint_j>.
/// Exact on piecewise-linear paths; 2-homogeneous in the path.
double action(const DiscretePath& path);
double action(const Mat& samples);

/// Trapezoid mean (1/N)(x_0/2 + x_1 + ... + x_{N-1} + x_N/2).
Vec trapezoid_mean(const Mat& samples);

}  // namespace cochord
