/**
 * @file constraints.hpp
 * @brief The discrete path subspace the dual functional is minimized over:
 *        endpoints on the frame subspace, endpoint difference along the
 *        leaf directions, trapezoid mean transverse to the frame.
 *
 * For k = n the space degenerates to closed loops with zero mean.
 */
#pragma once

#include <vector>

#include "cochord/frame.hpp"

namespace cochord {

class ConstraintSpace {
 public:
  ConstraintSpace(const Frame& frame, int N);

  const Frame& frame() const { return frame_; }
  int segments() const { return N_; }
  int ambient_dim() const { return frame_.ambient_dim() * (N_ + 1); }
  int codim() const { return static_cast<int>(rows_.size()); }
  int dim() const { return ambient_dim() - codim(); }

  /// Orthogonal projection onto the subspace, in place (2n x (N+1) layout).
  void project(Mat& samples) const;

  /// Residual vector of all constraint functionals at the given path.
  Vec residuals(const Mat& samples) const;

  /// Max absolute constraint residual.
  double max_residual(const Mat& samples) const;

  /// Dense orthonormal basis of the subspace (columns).  Materialized on
  /// demand; intended for small N.
  Mat orthonormal_basis() const;

 private:
  struct Row {
    int coord;    // coordinate index in 0..2n-1
    Vec weights;  // N+1 sample weights
    double norm2;
  };

  void audit() const;

  Frame frame_;
  int N_;
  std::vector<Row> rows_;
};

}  // namespace cochord
