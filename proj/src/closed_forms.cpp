#include "cochord/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cochord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(const Vec& radii) {
  if ((radii.array() <= 0).any())
    throw std::invalid_argument("radii must be positive");
}

double two_block_min(int k, const Vec& r2) {
  // min{ 2 min_{i<=k} r_i^2, min_{i>k} r_i^2 }, empty min = +inf.
  const int n = static_cast<int>(r2.size());
  double first = kInf, second = kInf;
  for (int i = 0; i < k; ++i) first = std::min(first, r2(i));
  for (int i = k; i < n; ++i) second = std::min(second, r2(i));
  return std::min(2.0 * first, second);
}

}  // namespace

ClosedFormResult ellipsoid_capacity(const Frame& frame, const Vec& radii) {
  require_positive(radii);
  if (radii.size() != frame.n)
    throw std::invalid_argument("ellipsoid_capacity: need n radii");
  ClosedFormResult out;
  out.formula_id = "ellipsoid";
  const Vec r2 = radii.array().square();
  if (frame.periodic()) {
    out.value = kPi * r2.minCoeff();
    out.assumptions.push_back("k=n: periodic capacity");
    return out;
  }
  out.value = 0.5 * kPi * two_block_min(frame.k, r2);
  return out;
}

ClosedFormResult offcenter_ball_capacity(const Frame& frame, double a,
                                         double R) {
  if (R <= 0) throw std::invalid_argument("offcenter ball: R > 0 required");
  if (std::abs(a) >= R)
    throw std::domain_error("offcenter ball: need |a| < R");
  if (frame.periodic())
    throw std::domain_error("offcenter ball formula requires k < n");
  ClosedFormResult out;
  out.formula_id = "offcenter_ball";
  const double r = std::sqrt(1.0 - (a / R) * (a / R));
  out.value = (std::asin(r) - r * std::sqrt(1.0 - r * r)) * R * R;
  out.assumptions.push_back("|a| < R");
  return out;
}

ClosedFormResult polydisc_capacity(const Frame& frame, const Vec& radii) {
  require_positive(radii);
  if (radii.size() != frame.n)
    throw std::invalid_argument("polydisc_capacity: need n radii");
  ClosedFormResult out;
  out.formula_id = "polydisc";
  const Vec r2 = radii.array().square();
  out.value = frame.periodic() ? kPi * r2.minCoeff()
                               : 0.5 * kPi * two_block_min(frame.k, r2);
  return out;
}

ClosedFormResult box_capacity(const Frame& frame,
                              const std::vector<std::array<double, 4>>& quads) {
  if (static_cast<int>(quads.size()) != frame.n)
    throw std::invalid_argument("box_capacity: need n quadruples");
  double first = kInf, second = kInf;
  for (int i = 0; i < frame.n; ++i) {
    const auto& [a, b, c, d] = quads[i];
    if (!(a < b) || c <= 0 || d <= 0)
      throw std::invalid_argument("box_capacity: malformed interval");
    if (i < frame.k)
      first = std::min(first, (b - a) * (c + d));
    else
      second = std::min(second, (b - a) * std::min(c, d));
  }
  ClosedFormResult out;
  out.formula_id = "box";
  out.value = std::min(first, second);
  return out;
}

ClosedFormResult product_capacity(const Frame& frame,
                                  const std::vector<ProductFactor>& factors) {
  int total = 0;
  for (const auto& f : factors) total += f.n;
  if (total != frame.n)
    throw std::invalid_argument("product_capacity: factor dims must sum to n");
  ClosedFormResult out;
  out.formula_id = "product";
  int l = frame.k;
  double value = kInf;
  for (const auto& f : factors) {
    const int idx = std::min(f.n, l);
    value = std::min(value, f.capacity_at(idx));
    l = std::max(l - f.n, 0);
  }
  out.value = value;
  return out;
}

ClosedFormResult lagrangian_product_capacity(const Frame& frame,
                                             const BodyPtr& delta) {
  if (delta->dim() != frame.n)
    throw std::invalid_argument(
        "lagrangian_product_capacity: delta must live in R^n");
  if (!delta->centrally_symmetric())
    throw std::domain_error(
        "lagrangian_product_capacity: delta must be centrally symmetric");
  if (!contains_origin_interior(*delta))
    throw std::domain_error(
        "lagrangian_product_capacity: delta must contain 0");
  ClosedFormResult out;
  out.formula_id = "lagrangian_product";
  out.assumptions.push_back("centrally symmetric");
  out.value = frame.periodic() ? 4.0 : 2.0;
  return out;
}

ClosedFormResult known_constants(KnownDomain id, const Frame& frame,
                                 double scale) {
  if (frame.periodic())
    throw std::domain_error("known_constants: k = n unsupported");
  if (scale <= 0) throw std::invalid_argument("known_constants: scale > 0");
  ClosedFormResult out;
  out.formula_id = (id == KnownDomain::W_domain) ? "W_capacity" : "U_capacity";
  out.value = 0.5 * kPi * scale * scale;
  out.assumptions.push_back("documented constant; domain outside solver scope");
  return out;
}

// ---- Recognition -----------------------------------------------------------

namespace {

class Recognizer : public BodyVisitor {
 public:
  explicit Recognizer(Frame frame) : frame_(frame) {}

  std::optional<ClosedFormResult> result;

  void elliptic_ball(const Vec& axes) override {
    const int d = static_cast<int>(axes.size());
    if (d != frame_.ambient_dim()) return;
    const int n = d / 2;
    for (int i = 0; i < n; ++i)
      if (std::abs(axes(i) - axes(n + i)) > 1e-12 * axes(i)) return;
    result = ellipsoid_capacity(frame_, axes.head(n));
  }

  void ball(const Vec& center, double radius) override {
    if (center.size() != frame_.ambient_dim()) return;
    if (frame_.periodic()) {
      ClosedFormResult r;
      r.formula_id = "ball_periodic";
      r.value = kPi * radius * radius;
      result = r;
      return;
    }
    // Capacity depends only on the leafwise-transverse offset a = |P_JV0 c|.
    const Vec off = project(frame_, Subspace::JV0, center);
    const double a = off.norm();
    if (a >= radius) return;
    result = offcenter_ball_capacity(frame_, a, radius);
  }

  void interval_box(const std::vector<std::pair<double, double>>& b) override {
    const int d = static_cast<int>(b.size());
    if (d != frame_.ambient_dim()) return;
    const int n = d / 2;
    std::vector<std::array<double, 4>> quads(n);
    for (int i = 0; i < n; ++i) {
      const auto [a, bb] = b[i];
      const auto [lo, hi] = b[n + i];
      if (!(lo < 0.0 && hi > 0.0)) return;  // must meet the frame subspace
      quads[i] = {a, bb, -lo, hi};
    }
    result = box_capacity(frame_, quads);
  }

  void polydisc(const Vec& radii) override {
    if (2 * radii.size() != frame_.ambient_dim()) return;
    result = polydisc_capacity(frame_, radii);
  }

  void vertex_polytope(const Mat&, bool) override {}

  void product(const BodyPtr& left, const BodyPtr& right) override {
    auto fl = factor_of(left);
    auto fr = factor_of(right);
    if (!fl || !fr) return;
    result = product_capacity(frame_, {*fl, *fr});
  }

  void lagrangian_product(const BodyPtr& q, const BodyPtr& p) override {
    // Delta x Delta° for symmetric Delta.
    if (!q->centrally_symmetric()) return;
    if (auto* pol = dynamic_cast<const Body*>(p.get());
        pol && p->kind() == "polar") {
      // p must be the polar of q, structurally.
      struct PolarInner : BodyVisitor {
        BodyPtr inner;
        void elliptic_ball(const Vec&) override {}
        void ball(const Vec&, double) override {}
        void interval_box(const std::vector<std::pair<double, double>>&) override {}
        void polydisc(const Vec&) override {}
        void vertex_polytope(const Mat&, bool) override {}
        void product(const BodyPtr&, const BodyPtr&) override {}
        void lagrangian_product(const BodyPtr&, const BodyPtr&) override {}
        void polar(const BodyPtr& of) override { inner = of; }
        void psum(double, const BodyPtr&, const BodyPtr&) override {}
        void scale(double, const BodyPtr&) override {}
        void translate(const Vec&, const BodyPtr&) override {}
        void symm_diff(const BodyPtr&) override {}
      } pi;
      p->accept(pi);
      if (pi.inner.get() == q.get())
        result = lagrangian_product_capacity(frame_, q);
    }
  }

  void polar(const BodyPtr&) override {}
  void psum(double, const BodyPtr&, const BodyPtr&) override {}

  void scale(double factor, const BodyPtr& of) override {
    auto sub = try_closed_form(of, frame_);
    if (!sub) return;
    sub->value *= factor * factor;  // conformality
    sub->assumptions.push_back("scaled");
    result = sub;
  }

  void translate(const Vec& shift, const BodyPtr& of) override {
    // Invariant only for shifts along the frame subspace.
    if (dist_to_frame(frame_, shift) > 1e-12 * (1.0 + shift.norm())) return;
    result = try_closed_form(of, frame_);
  }

  void symm_diff(const BodyPtr&) override {}

 private:
  std::optional<ProductFactor> factor_of(const BodyPtr& body) {
    if (body->dim() % 2) return std::nullopt;
    const int n_i = body->dim() / 2;
    // Factor must be evaluable at every index 0..n_i.
    for (int idx = 0; idx <= n_i; ++idx) {
      Frame f(n_i, idx);
      if (!try_closed_form(body, f)) return std::nullopt;
    }
    ProductFactor pf;
    pf.n = n_i;
    BodyPtr b = body;
    pf.capacity_at = [b, n_i](int idx) {
      return try_closed_form(b, Frame(n_i, idx))->value;
    };
    return pf;
  }

  Frame frame_;
};

}  // namespace

std::optional<ClosedFormResult> try_closed_form(const BodyPtr& body,
                                                const Frame& frame) {
  if (body->dim() != frame.ambient_dim()) return std::nullopt;
  Recognizer rec(frame);
  body->accept(rec);
  return rec.result;
}

std::vector<CatalogEntry> example_bodies_catalog() {
  std::vector<CatalogEntry> out;
  // E^2(1,2) x D^2(1): ellipse in the q-plane times a disc in the p-plane.
  Vec axes(2);
  axes << 1.0, 2.0;
  BodyPtr eld = make_lagrangian_product(make_elliptic_ball(axes),
                                        make_ball(2, 1.0));
  out.push_back({"ellipse_x_disc_k0", eld, Frame(2, 0), 2.0, false, "="});
  out.push_back({"ellipse_x_disc_k1", eld, Frame(2, 1), kPi, true, ">="});
  out.push_back({"ellipse_x_disc_k2", eld, Frame(2, 2), 4.0, false, "="});
  return out;
}

}  // namespace cochord
