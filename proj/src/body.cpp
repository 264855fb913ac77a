#include "cochord/body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cochord {

namespace {

constexpr double kPi = std::numbers::pi;

// ---- Small dense two-phase simplex ----------------------------------------
//
// min c^T x  s.t.  A x = b, x >= 0, with few rows (body dimension).
// Returns the primal optimum and the dual vector y solving B^T y = c_B.

struct LPResult {
  bool feasible = false;
  double value = 0.0;
  Vec x;
  Vec y;
};

class SimplexTableau {
 public:
  SimplexTableau(const Mat& A, const Vec& b, const Vec& c) {
    m_ = static_cast<int>(A.rows());
    n_ = static_cast<int>(A.cols());
    A_ = A;
    b_ = b;
    c_ = c;
    flip_ = Vec::Ones(m_);
    for (int i = 0; i < m_; ++i)
      if (b_(i) < 0) {
        A_.row(i) *= -1.0;
        b_(i) *= -1.0;
        flip_(i) = -1.0;
      }
  }

  LPResult solve() {
    LPResult res;
    // Phase 1: artificial basis.
    Mat T(m_ + 1, n_ + m_ + 1);
    T.setZero();
    T.block(0, 0, m_, n_) = A_;
    T.block(0, n_, m_, m_) = Mat::Identity(m_, m_);
    T.block(0, n_ + m_, m_, 1) = b_;
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
    // Phase-1 objective row: minimize sum of artificials.
    for (int j = 0; j <= n_ + m_; ++j) {
      double s = 0.0;
      for (int i = 0; i < m_; ++i) s += T(i, j);
      T(m_, j) = (j >= n_ && j < n_ + m_) ? s - 1.0 : s;
    }
    if (!iterate(T, n_ + m_)) return res;
    if (T(m_, n_ + m_) > 1e-8) return res;  // infeasible
    // Drive artificials out of the basis where possible.
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      int piv = -1;
      for (int j = 0; j < n_; ++j)
        if (std::abs(T(i, j)) > 1e-9) { piv = j; break; }
      if (piv >= 0) pivot(T, n_ + m_, i, piv);
    }
    // Phase 2 objective row.
    for (int j = 0; j <= n_ + m_; ++j) {
      double red = (j < n_) ? -c_(j) : 0.0;
      for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_) red += c_(basis_[i]) * T(i, j);
      T(m_, j) = red;
    }
    // Block remaining artificial columns.
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_) artificial_rows_.push_back(i);
    if (!iterate(T, n_ + m_, /*phase2=*/true)) return res;

    res.feasible = true;
    res.x = Vec::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) res.x(basis_[i]) = T(i, n_ + m_);
    res.value = c_.dot(res.x);
    // Dual from the final basis.
    Mat B(m_, m_);
    Vec cb(m_);
    for (int i = 0; i < m_; ++i) {
      for (int r = 0; r < m_; ++r)
        B(r, i) = (basis_[i] < n_) ? A_(r, basis_[i])
                                   : (r == basis_[i] - n_ ? 1.0 : 0.0);
      cb(i) = (basis_[i] < n_) ? c_(basis_[i]) : 0.0;
    }
    res.y = B.transpose().colPivHouseholderQr().solve(cb);
    res.y.array() *= flip_.array();  // undo the row sign normalization
    return res;
  }

 private:
  void pivot(Mat& T, int rhs, int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      const double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    basis_[row] = col;
    (void)rhs;
  }

  bool iterate(Mat& T, int rhs, bool phase2 = false) {
    const int max_iter = 200 * (m_ + n_ + 4);
    for (int it = 0; it < max_iter; ++it) {
      // Bland's rule.
      int col = -1;
      const int limit = phase2 ? n_ : n_ + m_;
      for (int j = 0; j < limit; ++j)
        if (T(m_, j) > 1e-10) { col = j; break; }
      if (col < 0) return true;
      int row = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (T(i, col) <= 1e-11) continue;
        const double ratio = T(i, rhs) / T(i, col);
        if (row < 0 || ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && basis_[i] < basis_[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row < 0) return false;  // unbounded
      pivot(T, rhs, row, col);
    }
    return false;
  }

  int m_ = 0, n_ = 0;
  Mat A_;
  Vec b_, c_, flip_;
  std::vector<int> basis_;
  std::vector<int> artificial_rows_;
};

LPResult lp_min_eq(const Mat& A, const Vec& b, const Vec& c) {
  return SimplexTableau(A, b, c).solve();
}

// ---- Generic gauge via the support function -------------------------------
//
// j_D(z) = min{ t > 0 : sup_{|w|<=1} (<z,w> - t h_D(w)) <= 0 }.  The inner
// problem is a concave 1-homogeneous maximization over the unit ball, the
// outer one a monotone bisection in t.  The maximizing direction w* gives the
// exact subgradient w*/h(w*).

double inner_max(const Body& body, const Vec& z, double t, Vec& w_io) {
  Vec w = w_io;
  if (w.norm() < 1e-14) w = z.normalized();
  Vec best_w = w;
  double best = -1e300;
  const int iters = 220;
  for (int it = 1; it <= iters; ++it) {
    GaugeEval h = body.support(w);
    const double f = z.dot(w) - t * h.value;
    if (f > best) {
      best = f;
      best_w = w;
    }
    Vec g = z - t * h.subgradient;
    const double gn = g.norm();
    if (gn < 1e-14) break;
    w += (0.35 / std::sqrt(static_cast<double>(it))) * g / gn;
    const double wn = w.norm();
    if (wn > 1.0) w /= wn;
  }
  w_io = best_w;
  return best;
}

GaugeEval generic_gauge(const Body& body, const Vec& z) {
  GaugeEval out;
  out.subgradient = Vec::Zero(z.size());
  const double zn = z.norm();
  if (zn < 1e-300) return out;

  Vec w = z / zn;
  double hi = 1.0;
  while (inner_max(body, z, hi, w) > 0.0 && hi < 1e12) hi *= 2.0;
  double lo = 0.0;
  Vec w_at_root = w;
  for (int it = 0; it < 60 && (hi - lo) > 1e-11 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    Vec wm = w_at_root;
    if (inner_max(body, z, mid, wm) > 0.0) {
      lo = mid;
      w_at_root = wm;
    } else {
      hi = mid;
    }
  }
  out.value = 0.5 * (lo + hi);
  GaugeEval h = body.support(w_at_root);
  if (h.value > 1e-14) out.subgradient = w_at_root / h.value;
  return out;
}

Vec zeros_like(const Vec& v) { return Vec::Zero(v.size()); }

void require_dim(const Body& b, const Vec& v, const char* who) {
  if (v.size() != b.dim())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

double ball_volume_coeff(int d) {  // volume of the unit ball in R^d
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace

// ---- Base defaults ---------------------------------------------------------

GaugeEval Body::gauge(const Vec& z) const {
  require_dim(*this, z, "gauge");
  return generic_gauge(*this, z);
}

bool Body::contains(const Vec& z, double tol) const {
  return gauge(z).value <= 1.0 + tol;
}

// ---- Leaves ----------------------------------------------------------------

namespace {

// q-norm relaxation of a vertex maximum: (sum_i max(<v_i, w>, 0)^q)^{1/q}.
class QSmoothPolytope final : public Body {
 public:
  QSmoothPolytope(Mat v, double q, bool sym)
      : v_(std::move(v)), q_(q), sym_(sym) {}
  int dim() const override { return static_cast<int>(v_.rows()); }
  std::string kind() const override { return "smoothed_polytope"; }
  bool centrally_symmetric() const override { return sym_; }

  GaugeEval support(const Vec& w) const override {
    const Vec s = v_.transpose() * w;
    const double m = s.maxCoeff();
    GaugeEval out;
    out.subgradient = zeros_like(w);
    if (m <= 0) return out;
    double acc = 0.0;
    Vec pw = Vec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) <= 0) continue;
      pw(i) = std::pow(s(i) / m, q_ - 1.0);
      acc += pw(i) * (s(i) / m);
    }
    out.value = m * std::pow(acc, 1.0 / q_);
    const double c = std::pow(acc, 1.0 / q_ - 1.0);
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (pw(i) > 0) out.subgradient += (c * pw(i)) * v_.col(i);
    return out;
  }

  void accept(BodyVisitor& v) const override { v.vertex_polytope(v_, sym_); }

 private:
  Mat v_;
  double q_;
  bool sym_;
};

// Per-coordinate q-norm relaxation of an interval support.
class QSmoothBox final : public Body {
 public:
  QSmoothBox(std::vector<std::pair<double, double>> b, double q)
      : b_(std::move(b)), q_(q) {}
  int dim() const override { return static_cast<int>(b_.size()); }
  std::string kind() const override { return "smoothed_box"; }

  GaugeEval support(const Vec& w) const override {
    GaugeEval out;
    out.subgradient = zeros_like(w);
    for (int i = 0; i < w.size(); ++i) {
      const double slo = b_[i].first * w(i);
      const double shi = b_[i].second * w(i);
      const double plo = std::max(slo, 0.0), phi = std::max(shi, 0.0);
      if (plo <= 0 && phi <= 0) continue;
      const double m = std::max(plo, phi);
      const double alo = (plo > 0) ? std::pow(plo / m, q_) : 0.0;
      const double ahi = (phi > 0) ? std::pow(phi / m, q_) : 0.0;
      const double h = m * std::pow(alo + ahi, 1.0 / q_);
      out.value += h;
      const double c = std::pow(alo + ahi, 1.0 / q_ - 1.0);
      double g = 0.0;
      if (plo > 0) g += c * std::pow(plo / m, q_ - 1.0) * b_[i].first;
      if (phi > 0) g += c * std::pow(phi / m, q_ - 1.0) * b_[i].second;
      out.subgradient(i) = g;
    }
    return out;
  }

  void accept(BodyVisitor& v) const override { v.interval_box(b_); }

 private:
  std::vector<std::pair<double, double>> b_;
  double q_;
};

class EllipticBall final : public Body {
 public:
  explicit EllipticBall(Vec axes) : axes_(std::move(axes)) {
    if ((axes_.array() <= 0).any())
      throw std::invalid_argument("elliptic ball: axes must be positive");
  }
  int dim() const override { return static_cast<int>(axes_.size()); }
  std::string kind() const override { return "elliptic_ball"; }
  bool centrally_symmetric() const override { return true; }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    const Vec scaled = axes_.array() * w.array();
    const double h = scaled.norm();
    GaugeEval out;
    out.value = h;
    out.subgradient =
        (h > 1e-300) ? Vec((axes_.array().square() * w.array()) / h)
                     : zeros_like(w);
    return out;
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    const Vec scaled = z.array() / axes_.array();
    const double j = scaled.norm();
    GaugeEval out;
    out.value = j;
    out.subgradient = (j > 1e-300)
                          ? Vec((z.array() / axes_.array().square()) / j)
                          : zeros_like(z);
    return out;
  }

  bool contains(const Vec& z, double tol) const override {
    return (z.array() / axes_.array()).matrix().squaredNorm() <=
           1.0 + 2.0 * tol;
  }

  std::optional<double> exact_volume() const override {
    return ball_volume_coeff(dim()) * axes_.prod();
  }

  void accept(BodyVisitor& v) const override { v.elliptic_ball(axes_); }

  const Vec& axes() const { return axes_; }

 private:
  Vec axes_;
};

class BallBody final : public Body {
 public:
  BallBody(Vec center, double radius) : c_(std::move(center)), r_(radius) {
    if (r_ <= 0) throw std::invalid_argument("ball: radius must be positive");
  }
  int dim() const override { return static_cast<int>(c_.size()); }
  std::string kind() const override { return "ball"; }
  bool centrally_symmetric() const override { return c_.norm() == 0.0; }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    const double wn = w.norm();
    GaugeEval out;
    out.value = c_.dot(w) + r_ * wn;
    out.subgradient = (wn > 1e-300) ? Vec(c_ + (r_ / wn) * w) : c_;
    return out;
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    GaugeEval out;
    out.subgradient = zeros_like(z);
    const double zn2 = z.squaredNorm();
    if (zn2 < 1e-300) return out;
    const double disc = r_ * r_ - c_.squaredNorm();
    if (disc <= 0)
      throw std::domain_error("ball gauge: 0 not in the interior");
    const double zc = z.dot(c_);
    const double lam = (-zc + std::sqrt(zc * zc + disc * zn2)) / disc;
    out.value = lam;
    const Vec num = z - lam * c_;
    const double den = num.dot(c_) + lam * r_ * r_;
    if (std::abs(den) > 1e-300) out.subgradient = num / den;
    return out;
  }

  bool contains(const Vec& z, double tol) const override {
    return (z - c_).norm() <= r_ * (1.0 + tol) + tol;
  }

  std::optional<double> exact_volume() const override {
    return ball_volume_coeff(dim()) * std::pow(r_, dim());
  }

  void accept(BodyVisitor& v) const override { v.ball(c_, r_); }

  const Vec& center() const { return c_; }
  double radius() const { return r_; }

 private:
  Vec c_;
  double r_;
};

class IntervalBox final : public Body {
 public:
  explicit IntervalBox(std::vector<std::pair<double, double>> b)
      : b_(std::move(b)) {
    for (auto& [lo, hi] : b_)
      if (!(lo < hi)) throw std::invalid_argument("box: need lo < hi");
  }
  int dim() const override { return static_cast<int>(b_.size()); }
  std::string kind() const override { return "interval_box"; }
  bool centrally_symmetric() const override {
    for (auto& [lo, hi] : b_)
      if (std::abs(lo + hi) > 1e-14 * (std::abs(lo) + std::abs(hi))) return false;
    return true;
  }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    GaugeEval out;
    out.subgradient = Vec(w.size());
    double h = 0.0;
    for (int i = 0; i < w.size(); ++i) {
      // At w_i = 0 any interval point supports; the minimal-norm choice
      // avoids spurious pulls on dead coordinates in subgradient loops.
      const double x = (w(i) > 0.0) ? b_[i].second
                       : (w(i) < 0.0)
                           ? b_[i].first
                           : std::clamp(0.0, b_[i].first, b_[i].second);
      out.subgradient(i) = x;
      h += x * w(i);
    }
    out.value = h;
    return out;
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    GaugeEval out;
    out.subgradient = zeros_like(z);
    int arg = -1;
    for (int i = 0; i < z.size(); ++i) {
      if (!(b_[i].first < 0.0 && b_[i].second > 0.0))
        throw std::domain_error("box gauge: 0 not in the interior");
      const double ji = (z(i) >= 0.0) ? z(i) / b_[i].second : z(i) / b_[i].first;
      if (ji > out.value) {
        out.value = ji;
        arg = i;
      }
    }
    if (arg >= 0 && std::abs(z(arg)) > 0)
      out.subgradient(arg) =
          1.0 / ((z(arg) >= 0.0) ? b_[arg].second : b_[arg].first);
    return out;
  }

  bool contains(const Vec& z, double tol) const override {
    for (int i = 0; i < z.size(); ++i) {
      const double pad = tol * (1.0 + std::abs(b_[i].first) + std::abs(b_[i].second));
      if (z(i) < b_[i].first - pad || z(i) > b_[i].second + pad) return false;
    }
    return true;
  }

  std::optional<double> exact_volume() const override {
    double v = 1.0;
    for (auto& [lo, hi] : b_) v *= hi - lo;
    return v;
  }

  void accept(BodyVisitor& v) const override { v.interval_box(b_); }

  BodyPtr smoothed(double q) const override {
    return std::make_shared<QSmoothBox>(b_, q);
  }

  const std::vector<std::pair<double, double>>& bounds() const { return b_; }

 private:
  std::vector<std::pair<double, double>> b_;
};

class Polydisc final : public Body {
 public:
  explicit Polydisc(Vec radii) : r_(std::move(radii)) {
    if ((r_.array() <= 0).any())
      throw std::invalid_argument("polydisc: radii must be positive");
  }
  int dim() const override { return 2 * static_cast<int>(r_.size()); }
  std::string kind() const override { return "polydisc"; }
  bool centrally_symmetric() const override { return true; }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    const int n = static_cast<int>(r_.size());
    GaugeEval out;
    out.subgradient = zeros_like(w);
    for (int i = 0; i < n; ++i) {
      const double a = w(i), b = w(n + i);
      const double m = std::hypot(a, b);
      out.value += r_(i) * m;
      if (m > 1e-300) {
        out.subgradient(i) = r_(i) * a / m;
        out.subgradient(n + i) = r_(i) * b / m;
      }
    }
    return out;
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    const int n = static_cast<int>(r_.size());
    GaugeEval out;
    out.subgradient = zeros_like(z);
    int arg = -1;
    for (int i = 0; i < n; ++i) {
      const double m = std::hypot(z(i), z(n + i)) / r_(i);
      if (m > out.value) {
        out.value = m;
        arg = i;
      }
    }
    if (arg >= 0 && out.value > 1e-300) {
      const double m = std::hypot(z(arg), z(n + arg));
      out.subgradient(arg) = z(arg) / (m * r_(arg));
      out.subgradient(n + arg) = z(n + arg) / (m * r_(arg));
    }
    return out;
  }

  bool contains(const Vec& z, double tol) const override {
    const int n = static_cast<int>(r_.size());
    for (int i = 0; i < n; ++i)
      if (std::hypot(z(i), z(n + i)) > r_(i) * (1.0 + tol) + tol) return false;
    return true;
  }

  std::optional<double> exact_volume() const override {
    return std::pow(kPi, r_.size()) * r_.array().square().prod();
  }

  void accept(BodyVisitor& v) const override { v.polydisc(r_); }

  const Vec& radii() const { return r_; }

 private:
  Vec r_;
};

class VertexPolytope final : public Body {
 public:
  VertexPolytope(Mat vertices, bool symmetric)
      : v_(std::move(vertices)), symmetric_(symmetric) {
    if (v_.cols() < 1) throw std::invalid_argument("polytope: no vertices");
  }
  int dim() const override { return static_cast<int>(v_.rows()); }
  std::string kind() const override { return "polytope"; }
  bool centrally_symmetric() const override { return symmetric_; }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    int best = 0;
    double h = v_.col(0).dot(w);
    for (int j = 1; j < v_.cols(); ++j) {
      const double s = v_.col(j).dot(w);
      if (s > h + 1e-14 * (1.0 + std::abs(h))) {
        h = s;
        best = j;
      } else if (std::abs(s - h) <= 1e-14 * (1.0 + std::abs(h)) &&
                 lex_less(v_.col(j), v_.col(best))) {
        best = j;  // lexicographically-first maximizing vertex
      }
    }
    GaugeEval out;
    out.value = v_.col(best).dot(w);
    out.subgradient = v_.col(best);
    return out;
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    GaugeEval out;
    out.subgradient = zeros_like(z);
    if (z.norm() < 1e-300) return out;
    // min 1^T beta  s.t.  V beta = z, beta >= 0; the dual optimum is the
    // supporting functional.
    LPResult lp = lp_min_eq(v_, z, Vec::Ones(v_.cols()));
    if (!lp.feasible)
      throw std::domain_error("polytope gauge: 0 not in the interior");
    out.value = lp.value;
    out.subgradient = lp.y;
    return out;
  }

  bool contains(const Vec& z, double tol) const override {
    // Feasibility of z = V theta, theta in the simplex.
    Mat A(v_.rows() + 1, v_.cols());
    A.topRows(v_.rows()) = v_;
    A.bottomRows(1).setOnes();
    Vec b(v_.rows() + 1);
    b.head(v_.rows()) = z;
    b(v_.rows()) = 1.0;
    LPResult lp = lp_min_eq(A, b, Vec::Zero(v_.cols()));
    if (lp.feasible) return true;
    if (tol <= 0) return false;
    return gauge_safe(z) <= 1.0 + tol;
  }

  void accept(BodyVisitor& v) const override {
    v.vertex_polytope(v_, symmetric_);
  }

  BodyPtr smoothed(double q) const override {
    return std::make_shared<QSmoothPolytope>(v_, q, symmetric_);
  }

  const Mat& vertices() const { return v_; }

 private:
  double gauge_safe(const Vec& z) const {
    try {
      return gauge(z).value;
    } catch (const std::exception&) {
      return 1e300;
    }
  }

  static bool lex_less(const Eigen::Ref<const Vec>& a,
                       const Eigen::Ref<const Vec>& b) {
    for (int i = 0; i < a.size(); ++i) {
      if (a(i) < b(i) - 1e-15) return true;
      if (a(i) > b(i) + 1e-15) return false;
    }
    return false;
  }

  Mat v_;
  bool symmetric_;
};

// ---- Combinators -----------------------------------------------------------

// Symplectic product: (q1, q2, p1, p2) with factor coordinates (q, p).
class ProductBody final : public Body {
 public:
  ProductBody(BodyPtr l, BodyPtr r) : l_(std::move(l)), r_(std::move(r)) {
    if (l_->dim() % 2 || r_->dim() % 2)
      throw std::invalid_argument("product: factors must be even-dimensional");
    n1_ = l_->dim() / 2;
    n2_ = r_->dim() / 2;
  }
  int dim() const override { return 2 * (n1_ + n2_); }
  std::string kind() const override { return "product"; }
  bool centrally_symmetric() const override {
    return l_->centrally_symmetric() && r_->centrally_symmetric();
  }

  Vec left_part(const Vec& w) const {
    Vec out(2 * n1_);
    out.head(n1_) = w.head(n1_);
    out.tail(n1_) = w.segment(n1_ + n2_, n1_);
    return out;
  }
  Vec right_part(const Vec& w) const {
    Vec out(2 * n2_);
    out.head(n2_) = w.segment(n1_, n2_);
    out.tail(n2_) = w.tail(n2_);
    return out;
  }
  Vec combine(const Vec& a, const Vec& b) const {
    Vec out(dim());
    out.head(n1_) = a.head(n1_);
    out.segment(n1_, n2_) = b.head(n2_);
    out.segment(n1_ + n2_, n1_) = a.tail(n1_);
    out.tail(n2_) = b.tail(n2_);
    return out;
  }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    GaugeEval a = l_->support(left_part(w));
    GaugeEval b = r_->support(right_part(w));
    return {a.value + b.value, combine(a.subgradient, b.subgradient)};
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    GaugeEval a = l_->gauge(left_part(z));
    GaugeEval b = r_->gauge(right_part(z));
    if (a.value >= b.value)
      return {a.value, combine(a.subgradient, zeros_like(right_part(z)))};
    return {b.value, combine(zeros_like(left_part(z)), b.subgradient)};
  }

  bool contains(const Vec& z, double tol) const override {
    return l_->contains(left_part(z), tol) && r_->contains(right_part(z), tol);
  }

  std::optional<double> exact_volume() const override {
    auto a = l_->exact_volume();
    auto b = r_->exact_volume();
    if (a && b) return *a * *b;
    return std::nullopt;
  }

  void accept(BodyVisitor& v) const override { v.product(l_, r_); }

  BodyPtr smoothed(double q) const override {
    BodyPtr l = l_->smoothed(q), r = r_->smoothed(q);
    if (!l && !r) return nullptr;
    return make_product(l ? l : l_, r ? r : r_);
  }

  const BodyPtr& left() const { return l_; }
  const BodyPtr& right() const { return r_; }

 private:
  BodyPtr l_, r_;
  int n1_, n2_;
};

// Lagrangian product Q x P: Q is the q-block, P the p-block.
class LagrangianProduct final : public Body {
 public:
  LagrangianProduct(BodyPtr q, BodyPtr p) : q_(std::move(q)), p_(std::move(p)) {
    if (q_->dim() != p_->dim())
      throw std::invalid_argument(
          "lagrangian product: factor dimensions must match");
    n_ = q_->dim();
  }
  int dim() const override { return 2 * n_; }
  std::string kind() const override { return "lagrangian_product"; }
  bool centrally_symmetric() const override {
    return q_->centrally_symmetric() && p_->centrally_symmetric();
  }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    GaugeEval a = q_->support(w.head(n_));
    GaugeEval b = p_->support(w.tail(n_));
    Vec g(dim());
    g.head(n_) = a.subgradient;
    g.tail(n_) = b.subgradient;
    return {a.value + b.value, g};
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    GaugeEval a = q_->gauge(z.head(n_));
    GaugeEval b = p_->gauge(z.tail(n_));
    Vec g = Vec::Zero(dim());
    if (a.value >= b.value) {
      g.head(n_) = a.subgradient;
      return {a.value, g};
    }
    g.tail(n_) = b.subgradient;
    return {b.value, g};
  }

  bool contains(const Vec& z, double tol) const override {
    return q_->contains(z.head(n_), tol) && p_->contains(z.tail(n_), tol);
  }

  std::optional<double> exact_volume() const override {
    auto a = q_->exact_volume();
    auto b = p_->exact_volume();
    if (a && b) return *a * *b;
    return std::nullopt;
  }

  void accept(BodyVisitor& v) const override { v.lagrangian_product(q_, p_); }

  BodyPtr smoothed(double q) const override {
    BodyPtr a = q_->smoothed(q), b = p_->smoothed(q);
    if (!a && !b) return nullptr;
    return make_lagrangian_product(a ? a : q_, b ? b : p_);
  }

  const BodyPtr& q_factor() const { return q_; }
  const BodyPtr& p_factor() const { return p_; }

 private:
  BodyPtr q_, p_;
  int n_;
};

class PolarBody final : public Body {
 public:
  explicit PolarBody(BodyPtr b) : b_(std::move(b)) {
    if (!contains_origin_interior(*b_))
      throw std::domain_error("polar: argument must contain 0 in its interior");
  }
  int dim() const override { return b_->dim(); }
  std::string kind() const override { return "polar"; }
  bool centrally_symmetric() const override {
    return b_->centrally_symmetric();
  }

  GaugeEval support(const Vec& w) const override { return b_->gauge(w); }
  GaugeEval gauge(const Vec& z) const override { return b_->support(z); }
  bool contains(const Vec& z, double tol) const override {
    return b_->support(z).value <= 1.0 + tol;
  }

  void accept(BodyVisitor& v) const override { v.polar(b_); }

  const BodyPtr& inner() const { return b_; }

 private:
  BodyPtr b_;
};

class PSumBody final : public Body {
 public:
  PSumBody(double p, BodyPtr l, BodyPtr r)
      : p_(p), l_(std::move(l)), r_(std::move(r)) {
    if (p_ < 1.0) throw std::invalid_argument("psum: need p >= 1");
    if (l_->dim() != r_->dim())
      throw std::invalid_argument("psum: dimension mismatch");
    if (p_ > 1.0 &&
        (!contains_origin_interior(*l_) || !contains_origin_interior(*r_)))
      throw std::domain_error("psum with p > 1: bodies must contain 0");
  }
  int dim() const override { return l_->dim(); }
  std::string kind() const override { return "psum"; }
  bool centrally_symmetric() const override {
    return l_->centrally_symmetric() && r_->centrally_symmetric();
  }

  GaugeEval support(const Vec& w) const override {
    require_dim(*this, w, "support");
    GaugeEval a = l_->support(w);
    GaugeEval b = r_->support(w);
    GaugeEval out;
    if (p_ == 1.0) {
      out.value = a.value + b.value;
      out.subgradient = a.subgradient + b.subgradient;
      return out;
    }
    const double ha = std::max(a.value, 0.0), hb = std::max(b.value, 0.0);
    out.value = std::pow(std::pow(ha, p_) + std::pow(hb, p_), 1.0 / p_);
    if (out.value > 1e-300) {
      const double c = std::pow(out.value, 1.0 - p_);
      out.subgradient = c * (std::pow(ha, p_ - 1.0) * a.subgradient +
                             std::pow(hb, p_ - 1.0) * b.subgradient);
    } else {
      out.subgradient = zeros_like(w);
    }
    return out;
  }

  void accept(BodyVisitor& v) const override { v.psum(p_, l_, r_); }

  BodyPtr smoothed(double q) const override {
    BodyPtr l = l_->smoothed(q), r = r_->smoothed(q);
    if (!l && !r) return nullptr;
    return std::make_shared<PSumBody>(p_, l ? l : l_, r ? r : r_);
  }

  double p() const { return p_; }

 private:
  double p_;
  BodyPtr l_, r_;
};

class ScaleBody final : public Body {
 public:
  ScaleBody(double f, BodyPtr b) : f_(f), b_(std::move(b)) {
    if (f_ <= 0) throw std::invalid_argument("scale: factor must be positive");
  }
  int dim() const override { return b_->dim(); }
  std::string kind() const override { return "scale"; }
  bool centrally_symmetric() const override {
    return b_->centrally_symmetric();
  }

  GaugeEval support(const Vec& w) const override {
    GaugeEval e = b_->support(w);
    return {f_ * e.value, f_ * e.subgradient};
  }
  GaugeEval gauge(const Vec& z) const override {
    GaugeEval e = b_->gauge(z);
    return {e.value / f_, e.subgradient / f_};
  }
  bool contains(const Vec& z, double tol) const override {
    return b_->contains(z / f_, tol);
  }
  std::optional<double> exact_volume() const override {
    auto v = b_->exact_volume();
    if (v) return *v * std::pow(f_, dim());
    return std::nullopt;
  }

  void accept(BodyVisitor& v) const override { v.scale(f_, b_); }

  BodyPtr smoothed(double q) const override {
    BodyPtr b = b_->smoothed(q);
    return b ? make_scale(f_, b) : nullptr;
  }

  double factor() const { return f_; }
  const BodyPtr& inner() const { return b_; }

 private:
  double f_;
  BodyPtr b_;
};

class TranslateBody final : public Body {
 public:
  TranslateBody(Vec s, BodyPtr b) : s_(std::move(s)), b_(std::move(b)) {
    if (s_.size() != b_->dim())
      throw std::invalid_argument("translate: shift dimension mismatch");
  }
  int dim() const override { return b_->dim(); }
  std::string kind() const override { return "translate"; }

  GaugeEval support(const Vec& w) const override {
    GaugeEval e = b_->support(w);
    return {e.value + s_.dot(w), e.subgradient + s_};
  }

  GaugeEval gauge(const Vec& z) const override {
    require_dim(*this, z, "gauge");
    GaugeEval out;
    out.subgradient = zeros_like(z);
    const double zn = z.norm();
    if (zn < 1e-300) return out;
    if (!b_->contains(-s_, 0.0))
      throw std::domain_error("translate gauge: 0 not in the interior");
    // { t : z/t in s + B } = [j, inf); bisect on membership.
    double hi = 1.0;
    while (!b_->contains(z / hi - s_, 1e-13) && hi < 1e12) hi *= 2.0;
    double lo = hi;
    while (lo > 1e-12 && b_->contains(z / lo - s_, 1e-13)) lo *= 0.5;
    for (int it = 0; it < 80 && hi - lo > 1e-13 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (b_->contains(z / mid - s_, 1e-13))
        hi = mid;
      else
        lo = mid;
    }
    out.value = hi;
    const Vec y = z / hi;
    const Vec nu = b_->gauge(y - s_).subgradient;
    const double den = nu.dot(y);
    if (std::abs(den) > 1e-300) out.subgradient = nu / den;
    return out;
  }

  bool contains(const Vec& z, double tol) const override {
    return b_->contains(z - s_, tol);
  }

  std::optional<double> exact_volume() const override {
    return b_->exact_volume();
  }

  void accept(BodyVisitor& v) const override { v.translate(s_, b_); }

  BodyPtr smoothed(double q) const override {
    BodyPtr b = b_->smoothed(q);
    return b ? std::make_shared<TranslateBody>(s_, b) : nullptr;
  }

  const Vec& shift() const { return s_; }
  const BodyPtr& inner() const { return b_; }

 private:
  Vec s_;
  BodyPtr b_;
};

class SymmDiffBody final : public Body {
 public:
  explicit SymmDiffBody(BodyPtr b) : b_(std::move(b)) {}
  int dim() const override { return b_->dim(); }
  std::string kind() const override { return "symm_diff"; }
  bool centrally_symmetric() const override { return true; }

  GaugeEval support(const Vec& w) const override {
    GaugeEval a = b_->support(w);
    GaugeEval b = b_->support(-w);
    return {a.value + b.value, a.subgradient - b.subgradient};
  }

  void accept(BodyVisitor& v) const override { v.symm_diff(b_); }

  BodyPtr smoothed(double q) const override {
    BodyPtr b = b_->smoothed(q);
    return b ? std::make_shared<SymmDiffBody>(b) : nullptr;
  }

 private:
  BodyPtr b_;
};

}  // namespace

// ---- Constructors ----------------------------------------------------------

BodyPtr make_elliptic_ball(const Vec& axes) {
  return std::make_shared<EllipticBall>(axes);
}

BodyPtr make_ellipsoid(const Vec& radii) {
  Vec axes(2 * radii.size());
  axes.head(radii.size()) = radii;
  axes.tail(radii.size()) = radii;
  return std::make_shared<EllipticBall>(axes);
}

BodyPtr make_ball(const Vec& center, double radius) {
  return std::make_shared<BallBody>(center, radius);
}

BodyPtr make_ball(int dim, double radius) {
  return std::make_shared<BallBody>(Vec::Zero(dim), radius);
}

BodyPtr make_offcenter_ball(int n, double a, double radius) {
  Vec c = Vec::Zero(2 * n);
  c(2 * n - 1) = a;
  return std::make_shared<BallBody>(c, radius);
}

BodyPtr make_interval_box(
    const std::vector<std::pair<double, double>>& bounds) {
  return std::make_shared<IntervalBox>(bounds);
}

BodyPtr make_box(const std::vector<std::array<double, 4>>& quads) {
  const int n = static_cast<int>(quads.size());
  std::vector<std::pair<double, double>> b(2 * n);
  for (int i = 0; i < n; ++i) {
    const auto& [a, bb, c, d] = quads[i];
    if (!(a < bb) || c <= 0 || d <= 0)
      throw std::invalid_argument("box: need a < b and positive c, d");
    b[i] = {a, bb};
    b[n + i] = {-c, d};
  }
  return std::make_shared<IntervalBox>(b);
}

BodyPtr make_polydisc(const Vec& radii) {
  return std::make_shared<Polydisc>(radii);
}

BodyPtr make_vertex_polytope(const Mat& vertices, bool centrally_symmetric) {
  return std::make_shared<VertexPolytope>(vertices, centrally_symmetric);
}

BodyPtr make_cube(int dim, double h) {
  Mat v(dim, 1 << dim);
  for (int m = 0; m < (1 << dim); ++m)
    for (int i = 0; i < dim; ++i) v(i, m) = (m >> i & 1) ? h : -h;
  return std::make_shared<VertexPolytope>(v, true);
}

BodyPtr make_cross_polytope(int dim, double s) {
  Mat v = Mat::Zero(dim, 2 * dim);
  for (int i = 0; i < dim; ++i) {
    v(i, 2 * i) = s;
    v(i, 2 * i + 1) = -s;
  }
  return std::make_shared<VertexPolytope>(v, true);
}

BodyPtr make_product(BodyPtr left, BodyPtr right) {
  return std::make_shared<ProductBody>(std::move(left), std::move(right));
}

BodyPtr make_lagrangian_product(BodyPtr q, BodyPtr p) {
  return std::make_shared<LagrangianProduct>(std::move(q), std::move(p));
}

BodyPtr make_polar(BodyPtr body) {
  if (auto eb = std::dynamic_pointer_cast<const EllipticBall>(body))
    return make_elliptic_ball(eb->axes().cwiseInverse());
  if (auto bb = std::dynamic_pointer_cast<const BallBody>(body))
    if (bb->center().norm() == 0.0)
      return make_ball(bb->dim(), 1.0 / bb->radius());
  if (auto sc = std::dynamic_pointer_cast<const ScaleBody>(body))
    return make_scale(1.0 / sc->factor(), make_polar(sc->inner()));
  if (auto po = std::dynamic_pointer_cast<const PolarBody>(body))
    return po->inner();
  return std::make_shared<PolarBody>(std::move(body));
}

BodyPtr make_psum(double p, BodyPtr left, BodyPtr right) {
  return std::make_shared<PSumBody>(p, std::move(left), std::move(right));
}

BodyPtr make_scale(double factor, BodyPtr body) {
  return std::make_shared<ScaleBody>(factor, std::move(body));
}

BodyPtr make_translate(const Vec& shift, BodyPtr body) {
  if (shift.size() != body->dim())
    throw std::invalid_argument("translate: shift dimension mismatch");
  if (shift.norm() == 0.0) return body;
  if (auto bb = std::dynamic_pointer_cast<const BallBody>(body))
    return make_ball(Vec(bb->center() + shift), bb->radius());
  if (auto ib = std::dynamic_pointer_cast<const IntervalBox>(body)) {
    auto b = ib->bounds();
    for (size_t i = 0; i < b.size(); ++i) {
      b[i].first += shift(static_cast<Eigen::Index>(i));
      b[i].second += shift(static_cast<Eigen::Index>(i));
    }
    return make_interval_box(b);
  }
  if (auto vp = std::dynamic_pointer_cast<const VertexPolytope>(body)) {
    Mat v = vp->vertices();
    v.colwise() += shift;
    return make_vertex_polytope(v, false);
  }
  if (auto tr = std::dynamic_pointer_cast<const TranslateBody>(body))
    return make_translate(Vec(shift + tr->shift()), tr->inner());
  return std::make_shared<TranslateBody>(shift, std::move(body));
}

BodyPtr make_symm_diff(BodyPtr body) {
  // D - D simplifies structurally for most leaves.
  if (auto eb = std::dynamic_pointer_cast<const EllipticBall>(body))
    return make_scale(2.0, body);
  if (auto bb = std::dynamic_pointer_cast<const BallBody>(body))
    return make_ball(bb->dim(), 2.0 * bb->radius());
  if (auto pd = std::dynamic_pointer_cast<const Polydisc>(body))
    return make_polydisc(2.0 * pd->radii());
  if (auto ib = std::dynamic_pointer_cast<const IntervalBox>(body)) {
    auto b = ib->bounds();
    for (auto& [lo, hi] : b) {
      const double w = hi - lo;
      lo = -w;
      hi = w;
    }
    return make_interval_box(b);
  }
  if (auto vp = std::dynamic_pointer_cast<const VertexPolytope>(body)) {
    const Mat& v = vp->vertices();
    const int m = static_cast<int>(v.cols());
    Mat d(v.rows(), m * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) d.col(i * m + j) = v.col(i) - v.col(j);
    return make_vertex_polytope(d, true);
  }
  if (auto tr = std::dynamic_pointer_cast<const TranslateBody>(body))
    return make_symm_diff(tr->inner());
  if (auto sc = std::dynamic_pointer_cast<const ScaleBody>(body))
    return make_scale(sc->factor(), make_symm_diff(sc->inner()));
  if (auto pr = std::dynamic_pointer_cast<const ProductBody>(body))
    return make_product(make_symm_diff(pr->left()), make_symm_diff(pr->right()));
  if (auto lp = std::dynamic_pointer_cast<const LagrangianProduct>(body))
    return make_lagrangian_product(make_symm_diff(lp->q_factor()),
                                   make_symm_diff(lp->p_factor()));
  return std::make_shared<SymmDiffBody>(std::move(body));
}

// ---- Derived evaluations ----------------------------------------------------

GaugeEval legendre_dual(const Body& body, const Vec& w) {
  GaugeEval h = body.support(w);
  GaugeEval out;
  out.value = 0.25 * h.value * h.value;
  out.subgradient = (0.5 * h.value) * h.subgradient;
  return out;
}

Vec bounding_radii(const Body& body) {
  const int d = body.dim();
  Vec r(d);
  Vec e = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    e(i) = 1.0;
    const double hi = body.support(e).value;
    e(i) = -1.0;
    const double lo = body.support(e).value;
    e(i) = 0.0;
    r(i) = std::max(hi, lo);
  }
  return r;
}

VolumeResult volume_exact(const Body& body) {
  auto v = body.exact_volume();
  if (!v) throw std::domain_error("volume_exact: no closed form for " +
                                  body.kind());
  return {*v, 0.0};
}

namespace {

std::pair<Vec, Vec> support_box(const Body& body) {
  const int d = body.dim();
  Vec lo(d), hi(d);
  Vec e = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    e(i) = 1.0;
    hi(i) = body.support(e).value;
    e(i) = -1.0;
    lo(i) = -body.support(e).value;
    e(i) = 0.0;
  }
  return {lo, hi};
}

VolumeResult mc_volume_box(const Body& body, const Vec& lo, const Vec& hi,
                           std::uint64_t seed, std::int64_t samples) {
  if (samples < 1000)
    throw std::invalid_argument("monte carlo volume: need >= 1000 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int d = body.dim();
  double box_vol = 1.0;
  for (int i = 0; i < d; ++i) box_vol *= hi(i) - lo(i);
  std::int64_t hits = 0;
  Vec z(d);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) z(i) = lo(i) + (hi(i) - lo(i)) * unif(rng);
    if (body.contains(z, 0.0)) ++hits;
  }
  const double phat = static_cast<double>(hits) / static_cast<double>(samples);
  VolumeResult out;
  out.value = box_vol * phat;
  out.stderr_est =
      box_vol * std::sqrt(std::max(phat * (1.0 - phat), 1e-15) /
                          static_cast<double>(samples));
  return out;
}

double dfact(int m) {  // m!! with 0!! = (-1)!! = 1
  double v = 1.0;
  for (int i = m; i >= 2; i -= 2) v *= i;
  return v;
}

// Volume of the p_n <= 0 part of B^{2n}((0..0,a), R), a >= 0.
double offcenter_ball_minus_volume(int n, double a, double R) {
  const double r = std::sqrt(std::max(0.0, 1.0 - (a / R) * (a / R)));
  const double th = std::asin(std::min(1.0, r));
  double sum = 0.0;
  for (int j = 0; j <= n - 1; ++j)
    sum += dfact(2 * n - 2 * j - 2) / dfact(2 * n - 2 * j - 1) *
           std::pow(std::sin(th), 2 * n - 2 * j - 1);
  double coeff = std::pow(kPi, n - 1);
  for (int i = 2; i <= n; ++i) coeff /= i;
  return coeff * (th - std::cos(th) * sum) * std::pow(R, 2 * n);
}

}  // namespace

VolumeResult volume_monte_carlo(const Body& body, std::uint64_t seed,
                                std::int64_t samples) {
  auto [lo, hi] = support_box(body);
  return mc_volume_box(body, lo, hi, seed, samples);
}

VolumeResult volume_half(const Body& body, int sign, std::uint64_t seed,
                         std::int64_t samples) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("volume_half: sign must be +-1");
  const int d = body.dim();

  // Exact closed forms.
  if (auto* bb = dynamic_cast<const BallBody*>(&body)) {
    const Vec& c = bb->center();
    if (c.head(d - 1).norm() == 0.0 && d % 2 == 0) {
      const int n = d / 2;
      const double a = c(d - 1);
      const double total = *bb->exact_volume();
      if (std::abs(a) >= bb->radius()) {
        const bool all_on_sign = (a > 0) == (sign > 0);
        return {all_on_sign ? total : 0.0, 0.0};
      }
      const double minus =
          offcenter_ball_minus_volume(n, std::abs(a), bb->radius());
      const bool want_far_side = (a >= 0) == (sign < 0);
      return {want_far_side ? minus : total - minus, 0.0};
    }
  }
  if (auto* ib = dynamic_cast<const IntervalBox*>(&body)) {
    const auto& b = ib->bounds();
    double v = 1.0;
    for (int i = 0; i + 1 < d; ++i) v *= b[i].second - b[i].first;
    const auto [lo, hi] = b[d - 1];
    const double part = (sign > 0) ? std::max(0.0, hi) - std::max(0.0, lo)
                                   : std::min(0.0, hi) - std::min(0.0, lo);
    return {v * std::max(0.0, part), 0.0};
  }
  if (auto* eb = dynamic_cast<const EllipticBall*>(&body))
    return {*eb->exact_volume() / 2.0, 0.0};
  if (auto* pd = dynamic_cast<const Polydisc*>(&body))
    return {*pd->exact_volume() / 2.0, 0.0};
  if (auto* pr = dynamic_cast<const ProductBody*>(&body)) {
    auto vl = pr->left()->exact_volume();
    if (vl) {
      VolumeResult hr = volume_half(*pr->right(), sign, seed, samples);
      return {*vl * hr.value, *vl * hr.stderr_est};
    }
  }
  if (auto* lp = dynamic_cast<const LagrangianProduct*>(&body)) {
    auto vq = lp->q_factor()->exact_volume();
    if (vq) {
      VolumeResult hp = volume_half(*lp->p_factor(), sign, seed, samples);
      return {*vq * hp.value, *vq * hp.stderr_est};
    }
  }
  if (auto* sc = dynamic_cast<const ScaleBody*>(&body)) {
    VolumeResult h = volume_half(*sc->inner(), sign, seed, samples);
    const double f = std::pow(sc->factor(), d);
    return {f * h.value, f * h.stderr_est};
  }

  // Monte Carlo over the signed half of the bounding box.
  auto [lo, hi] = support_box(body);
  if (sign > 0)
    lo(d - 1) = std::max(lo(d - 1), 0.0);
  else
    hi(d - 1) = std::min(hi(d - 1), 0.0);
  if (hi(d - 1) <= lo(d - 1)) return {0.0, 0.0};
  return mc_volume_box(body, lo, hi, seed, samples);
}

double mean_width_symmetrized(const Body& body, std::uint64_t seed,
                              std::int64_t samples) {
  if (samples < 1000)
    throw std::invalid_argument("mean width: need >= 1000 samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = body.dim();
  double acc = 0.0;
  Vec u(d);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) u(i) = gauss(rng);
    const double un = u.norm();
    if (un < 1e-12) continue;
    u /= un;
    acc += 0.5 * (body.support(u).value + body.support(-u).value);
  }
  return acc / static_cast<double>(samples);
}

bool contains_origin_interior(const Body& body, double margin) {
  const int d = body.dim();
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec w = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    w(i) = 1.0;
    if (body.support(w).value <= margin) return false;
    w(i) = -1.0;
    if (body.support(w).value <= margin) return false;
    w(i) = 0.0;
  }
  for (int s = 0; s < 64 * d; ++s) {
    for (int i = 0; i < d; ++i) w(i) = gauss(rng);
    w.normalize();
    if (body.support(w).value <= margin) return false;
  }
  return true;
}

}  // namespace cochord
