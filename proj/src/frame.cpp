#include "cochord/frame.hpp"

namespace cochord {

Vec apply_J(const Vec& v) {
  const auto d = v.size();
  if (d % 2 != 0) throw std::invalid_argument("apply_J: odd-length vector");
  const auto n = d / 2;
  Vec out(d);
  out.head(n) = -v.tail(n);
  out.tail(n) = v.head(n);
  return out;
}

void apply_J_cols(Mat& cols) {
  const auto d = cols.rows();
  if (d % 2 != 0) throw std::invalid_argument("apply_J_cols: odd row count");
  const auto n = d / 2;
  Mat top = cols.topRows(n);
  cols.topRows(n) = -cols.bottomRows(n);
  cols.bottomRows(n) = top;
}

namespace {

void check_dim(const Frame& frame, const Vec& v, const char* who) {
  if (v.size() != frame.ambient_dim())
    throw std::invalid_argument(std::string(who) + ": vector length " +
                                std::to_string(v.size()) + " != 2n = " +
                                std::to_string(frame.ambient_dim()));
}

}  // namespace

Vec project(const Frame& frame, Subspace sub, const Vec& v) {
  check_dim(frame, v, "project");
  const int n = frame.n, k = frame.k;
  Vec out = Vec::Zero(v.size());
  switch (sub) {
    case Subspace::Rnk:  // q_1..q_n, p_1..p_k
      out.head(n) = v.head(n);
      out.segment(n, k) = v.segment(n, k);
      break;
    case Subspace::V0:  // q_{k+1}..q_n
      out.segment(k, n - k) = v.segment(k, n - k);
      break;
    case Subspace::V1:  // q_1..q_k, p_1..p_k
      out.head(k) = v.head(k);
      out.segment(n, k) = v.segment(n, k);
      break;
    case Subspace::JV0:  // p_{k+1}..p_n
      out.segment(n + k, n - k) = v.segment(n + k, n - k);
      break;
  }
  return out;
}

double dist_to_frame(const Frame& frame, const Vec& v) {
  check_dim(frame, v, "dist_to_frame");
  return v.segment(frame.n + frame.k, frame.n - frame.k).norm();
}

bool leaf_equivalent(const Frame& frame, const Vec& x, const Vec& y,
                     double tol) {
  check_dim(frame, x, "leaf_equivalent");
  check_dim(frame, y, "leaf_equivalent");
  const double scale = std::max({1.0, x.norm(), y.norm()});
  if (dist_to_frame(frame, x) > tol * scale ||
      dist_to_frame(frame, y) > tol * scale)
    throw std::invalid_argument("leaf_equivalent: point off the frame subspace");
  const Vec d = x - y;
  return (d - project(frame, Subspace::V0, d)).norm() <= tol * scale;
}

DiscretePath::DiscretePath(Frame f, Mat s) : frame(f), samples(std::move(s)) {
  if (samples.rows() != frame.ambient_dim())
    throw std::invalid_argument("DiscretePath: row count != 2n");
  if (samples.cols() < 2)
    throw std::invalid_argument("DiscretePath: need at least 2 samples");
}

double action(const Mat& samples) {
  const auto d = samples.rows();
  const auto n = d / 2;
  const auto N = samples.cols() - 1;
  // <-J dx, mid> with mid = (x_j + x_{j+1})/2; the dx self-term vanishes,
  // so this equals <-J x_{j+1}, x_j> = <x_{j+1}, J x_j>.
  double a = 0.0;
  for (Eigen::Index j = 0; j < N; ++j) {
    const auto xj = samples.col(j);
    const auto xj1 = samples.col(j + 1);
    a += xj1.head(n).dot(-xj.tail(n)) + xj1.tail(n).dot(xj.head(n));
  }
  return 0.5 * a;
}

double action(const DiscretePath& path) { return action(path.samples); }

Vec trapezoid_mean(const Mat& samples) {
  const auto N = samples.cols() - 1;
  Vec m = 0.5 * (samples.col(0) + samples.col(N));
  for (Eigen::Index j = 1; j < N; ++j) m += samples.col(j);
  return m / static_cast<double>(N);
}

}  // namespace cochord
