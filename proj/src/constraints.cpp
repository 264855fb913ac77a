#include "cochord/constraints.hpp"

#include <cmath>

namespace cochord {

namespace {

Vec delta_weight(int N, int at) {
  Vec w = Vec::Zero(N + 1);
  w(at) = 1.0;
  return w;
}

Vec endpoint_diff_weight(int N) {
  Vec w = Vec::Zero(N + 1);
  w(0) = -1.0;
  w(N) = 1.0;
  return w;
}

Vec trapezoid_weight(int N) {
  Vec w = Vec::Constant(N + 1, 1.0 / N);
  w(0) *= 0.5;
  w(N) *= 0.5;
  return w;
}

}  // namespace

ConstraintSpace::ConstraintSpace(const Frame& frame, int N)
    : frame_(frame), N_(N) {
  if (N < 16) throw std::invalid_argument("ConstraintSpace: need N >= 16");
  const int n = frame.n, k = frame.k;

  auto add = [&](int coord, Vec w) {
    rows_.push_back({coord, std::move(w), 0.0});
    rows_.back().norm2 = rows_.back().weights.squaredNorm();
  };

  if (k < n) {
    // Endpoints on the frame: late momentum coordinates vanish at 0 and N.
    for (int i = n + k; i < 2 * n; ++i) {
      add(i, delta_weight(N, 0));
      add(i, delta_weight(N, N));
    }
    // Endpoint difference confined to the leaf directions: the V1-block is
    // periodic.
    for (int i = 0; i < k; ++i) add(i, endpoint_diff_weight(N));
    for (int i = n; i < n + k; ++i) add(i, endpoint_diff_weight(N));
    // Trapezoid mean transverse to the frame: its frame components vanish.
    for (int i = 0; i < n; ++i) add(i, trapezoid_weight(N));
    for (int i = n; i < n + k; ++i) add(i, trapezoid_weight(N));
  } else {
    // Periodic frame: closed loops with zero mean.
    for (int i = 0; i < 2 * n; ++i) add(i, endpoint_diff_weight(N));
    for (int i = 0; i < 2 * n; ++i) add(i, trapezoid_weight(N));
  }
  audit();
}

void ConstraintSpace::audit() const {
  // The functionals are pairwise orthogonal (distinct coordinates, or the
  // endpoint-difference / trapezoid pair whose sample weights are orthogonal
  // by construction), so the codimension equals the row count.  Verify both
  // facts instead of assuming them.
  const int expected =
      frame_.periodic() ? 4 * frame_.n : 3 * frame_.n + frame_.k;
  if (codim() != expected)
    throw std::logic_error("ConstraintSpace: row count mismatch");
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].norm2 <= 0)
      throw std::logic_error("ConstraintSpace: degenerate row");
    for (size_t j = i + 1; j < rows_.size(); ++j) {
      if (rows_[i].coord != rows_[j].coord) continue;
      const double dot = rows_[i].weights.dot(rows_[j].weights);
      if (std::abs(dot) >
          1e-12 * std::sqrt(rows_[i].norm2 * rows_[j].norm2))
        throw std::logic_error("ConstraintSpace: rows not orthogonal");
    }
  }
}

void ConstraintSpace::project(Mat& samples) const {
  for (const auto& row : rows_) {
    auto coord_row = samples.row(row.coord);
    const double val = coord_row.dot(row.weights);
    coord_row -= (val / row.norm2) * row.weights.transpose();
  }
}

Vec ConstraintSpace::residuals(const Mat& samples) const {
  Vec r(codim());
  for (size_t i = 0; i < rows_.size(); ++i)
    r(static_cast<Eigen::Index>(i)) =
        samples.row(rows_[i].coord).dot(rows_[i].weights);
  return r;
}

double ConstraintSpace::max_residual(const Mat& samples) const {
  return residuals(samples).cwiseAbs().maxCoeff();
}

Mat ConstraintSpace::orthonormal_basis() const {
  const int d = ambient_dim();
  const int nrow = frame_.ambient_dim();
  Mat P = Mat::Identity(d, d);
  for (int c = 0; c < d; ++c) {
    Mat col = P.col(c).reshaped(nrow, N_ + 1);
    Mat m = col;
    project(m);
    P.col(c) = m.reshaped(d, 1);
  }
  Eigen::ColPivHouseholderQR<Mat> qr(P);
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  if (rank != dim())
    throw std::logic_error("ConstraintSpace: basis rank mismatch");
  Mat Q = qr.householderQ() * Mat::Identity(d, rank);
  return Q;
}

}  // namespace cochord
