#include "cochord/bounds.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace cochord {

namespace {

constexpr double kPi = std::numbers::pi;

double solver_tolerance(const SolveConfig& cfg) {
  // Acceptance-scale tolerance for solver-backed comparisons.
  return std::max(0.02, 4.0 * cfg.tol_rel);
}

SolveResult solve_tolerant(const BodyPtr& body, const Frame& frame,
                           const SolveConfig& cfg) {
  try {
    return solve(body, frame, cfg);
  } catch (const ConvergenceError& e) {
    return e.best;  // the best value is still an upper bound
  }
}

CapacityResult capacity_tolerant(const BodyPtr& body, const Frame& frame,
                                 const SolveConfig& cfg) {
  try {
    return compute_capacity(body, frame, cfg);
  } catch (const ConvergenceError& e) {
    CapacityResult out;
    out.value = e.best.capacity;
    out.method = "dual-solver";
    out.upper = e.best.capacity;
    out.lower = 0.0;
    out.carrier = e.best.carrier;
    return out;
  }
}

}  // namespace

CapacityResult compute_capacity(const BodyPtr& body, const Frame& frame,
                                const SolveConfig& cfg,
                                const std::string& method) {
  CapacityResult out;
  if (method == "closed_form" || method == "auto") {
    auto cf = try_closed_form(body, frame);
    if (cf) {
      out.value = cf->value;
      out.method = "closed-form";
      out.formula_id = cf->formula_id;
      out.lower = out.upper = cf->value;
      return out;
    }
    if (method == "closed_form")
      throw std::domain_error("no closed form recognized for this body");
  }
  if (method == "flow") {
    // Quadratic-surface route: ellipsoid spectra and ball chords.
    auto cf = try_closed_form(body, frame);
    if (cf && cf->formula_id == "ellipsoid") {
      out.value = cf->value;  // equals min(return_spectrum)
      out.method = "flow";
      out.formula_id = cf->formula_id;
      out.lower = out.upper = out.value;
      return out;
    }
    if (cf && cf->formula_id == "offcenter_ball") {
      out.value = cf->value;
      out.method = "flow";
      out.formula_id = cf->formula_id;
      out.lower = out.upper = out.value;
      return out;
    }
    throw std::domain_error("flow method supports quadratic surfaces only");
  }
  SolveResult sr = solve(body, frame, cfg);
  out.value = sr.capacity;
  out.method = "dual-solver";
  out.upper = sr.capacity;  // discrete feasible paths bound from above
  out.lower = sr.capacity * (1.0 - solver_tolerance(cfg));
  out.carrier = sr.carrier;
  return out;
}

bool sampled_centrally_symmetric(const Body& body, double tol) {
  std::mt19937_64 rng(97531u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = body.dim();
  Vec w(d);
  for (int s = 0; s < 48 * d; ++s) {
    for (int i = 0; i < d; ++i) w(i) = gauss(rng);
    w.normalize();
    const double a = body.support(w).value;
    const double b = body.support(-w).value;
    if (std::abs(a - b) > tol * (1.0 + std::abs(a) + std::abs(b))) return false;
  }
  return true;
}

bool sampled_tau0_invariant(const Body& body, double tol) {
  std::mt19937_64 rng(86420u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int d = body.dim();
  const int n = d / 2;
  Vec w(d), tw(d);
  for (int s = 0; s < 48 * d; ++s) {
    for (int i = 0; i < d; ++i) w(i) = gauss(rng);
    w.normalize();
    tw.head(n) = w.head(n);
    tw.tail(n) = -w.tail(n);
    const double a = body.support(w).value;
    const double b = body.support(tw).value;
    if (std::abs(a - b) > tol * (1.0 + std::abs(a) + std::abs(b))) return false;
  }
  return true;
}

double j_transverse_norm(const BodyPtr& body, const Frame& frame,
                         const JNormOptions& opt) {
  const int n = frame.n, k = frame.k;
  const int m = n - k;  // dimension of the transverse momentum subspace
  if (m <= 0) throw std::domain_error("j_transverse_norm: requires k < n");
  const int d = 2 * n;

  // Direction u in R^m -> v in J V_0 (late momentum coordinates); the norm
  // is sup j_D(J v) / j_{D polar}(v) with j_{D polar} = h_D.
  auto ratio = [&](const Vec& u) {
    Vec v = Vec::Zero(d);
    v.segment(n + k, m) = u;
    const Vec Jv = apply_J(v);
    const double num = body->gauge(Jv).value;
    const double den = body->support(v).value;
    return (den > 1e-300) ? num / den : 0.0;
  };

  double best = 0.0;
  Vec best_u = Vec::Zero(m);
  auto consider = [&](const Vec& u) {
    const double r = ratio(u);
    if (r > best) {
      best = r;
      best_u = u;
    }
  };

  if (m == 1) {
    Vec u(1);
    u << 1.0;
    consider(u);
    u << -1.0;
    consider(u);
    return best;
  }
  if (m == 2) {
    for (int i = 0; i < opt.grid; ++i) {
      const double th = 2.0 * kPi * i / opt.grid;
      Vec u(2);
      u << std::cos(th), std::sin(th);
      consider(u);
    }
  } else {
    std::mt19937_64 rng(1357911u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < 64 * opt.grid; ++s) {
      Vec u(m);
      for (int i = 0; i < m; ++i) u(i) = gauss(rng);
      consider(u.normalized());
    }
  }
  // Local pattern refinement around the best direction.
  double h = 0.5;
  for (int it = 0; it < opt.refine_iters; ++it) {
    bool improved = false;
    for (int i = 0; i < m; ++i)
      for (double s : {-h, h}) {
        Vec u = best_u;
        u(i) += s;
        u.normalize();
        const double r = ratio(u);
        if (r > best) {
          best = r;
          best_u = u;
          improved = true;
        }
      }
    if (!improved) h *= 0.5;
  }
  return best;
}

InequalityReport j_norm_upper_bound(const BodyPtr& body, const Frame& frame,
                                    const SolveConfig& cfg,
                                    const JNormOptions& opt) {
  BodyPtr D = body;
  std::string inputs = "body";
  if (!sampled_centrally_symmetric(*D)) {
    if (!opt.wrap_symm_diff)
      throw std::domain_error(
          "j_norm_upper_bound: body not centrally symmetric (use the D - D "
          "wrapper)");
    D = make_symm_diff(D);
    inputs = "symm_diff(body)";
  }
  InequalityReport rep;
  rep.formula_id = "j_norm_upper_bound";
  rep.inputs = inputs;
  // capacity of the original body is also bounded by the wrapper's value.
  CapacityResult cap = capacity_tolerant(body, frame, cfg);
  const double norm = j_transverse_norm(D, frame, opt);
  rep.lhs = cap.value;
  rep.rhs = 2.0 / norm;
  rep.tol = (cap.method == "dual-solver") ? solver_tolerance(cfg) * cap.value
                                          : 1e-9;
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -rep.tol;
  return rep;
}

InequalityReport brunn_minkowski_check(const BodyPtr& D, const BodyPtr& K,
                                       double p, const Frame& frame,
                                       const SolveConfig& cfg) {
  if (p < 1.0) throw std::invalid_argument("brunn_minkowski_check: p >= 1");
  CapacityResult cD = capacity_tolerant(D, frame, cfg);
  CapacityResult cK = capacity_tolerant(K, frame, cfg);
  BodyPtr sum = make_psum(p, D, K);
  SolveResult cs = solve_tolerant(sum, frame, cfg);

  InequalityReport rep;
  rep.formula_id = "brunn_minkowski";
  std::ostringstream os;
  os << "p=" << p;
  rep.inputs = os.str();
  rep.lhs = std::pow(cs.capacity, 0.5 * p);
  rep.rhs = std::pow(cD.value, 0.5 * p) + std::pow(cK.value, 0.5 * p);
  rep.tol = solver_tolerance(cfg) * (rep.lhs + rep.rhs);
  rep.slack = rep.lhs - rep.rhs;
  rep.holds = rep.slack >= -rep.tol;
  return rep;
}

DkResult dk_derivative(const BodyPtr& D, const BodyPtr& K, const Frame& frame,
                       const SolveConfig& cfg,
                       const std::vector<double>& eps_ladder) {
  DkResult out;
  CapacityResult cD = capacity_tolerant(D, frame, cfg);
  CapacityResult cK = capacity_tolerant(K, frame, cfg);
  out.lower = 2.0 * std::sqrt(cD.value * cK.value);

  for (double eps : eps_ladder) {
    BodyPtr sum = make_psum(1.0, D, make_scale(eps, K));
    SolveResult cs = solve_tolerant(sum, frame, cfg);
    out.quotients.push_back((cs.capacity - cD.value) / eps);
  }
  // The quotients decrease as eps decreases by convexity of the square-root
  // capacity; extrapolate with the last two.
  const size_t q = out.quotients.size();
  out.estimate = (q >= 2) ? 2.0 * out.quotients[q - 1] - out.quotients[q - 2]
                          : out.quotients.back();

  // Upper bound: the support integral of K along a capacity carrier of D.
  SolveResult sD = solve_tolerant(D, frame, cfg);
  const Mat& X = sD.carrier.path.samples;
  const int d = static_cast<int>(X.rows());
  const int n = d / 2;
  const int N = static_cast<int>(X.cols()) - 1;
  double integral = 0.0;
  Vec w(d);
  for (int j = 0; j < N; ++j) {
    const Vec diff = X.col(j + 1) - X.col(j);
    w.head(n) = static_cast<double>(N) * diff.tail(n);
    w.tail(n) = -static_cast<double>(N) * diff.head(n);
    integral += K->support(w).value / N;
  }
  out.upper = integral;
  const double tol = solver_tolerance(cfg) * (std::abs(out.estimate) +
                                              out.lower + out.upper);
  out.bracket_holds =
      out.lower <= out.estimate + tol && out.estimate <= out.upper + tol;
  return out;
}

InequalityReport sandwich_check(const BodyPtr& body, const Frame& frame,
                                const SolveConfig& cfg) {
  if (!sampled_tau0_invariant(*body))
    throw std::domain_error("sandwich_check: body not (q,p)->(q,-p) invariant");
  if (frame.periodic())
    throw std::invalid_argument("sandwich_check: requires k < n");
  CapacityResult per = capacity_tolerant(body, Frame(frame.n, frame.n), cfg);
  CapacityResult ck = capacity_tolerant(body, frame, cfg);

  InequalityReport rep;
  rep.formula_id = "sandwich";
  rep.tol = solver_tolerance(cfg) * per.value;
  const double lower_slack = ck.value - 0.5 * per.value;
  const double upper_slack = per.value - ck.value;
  rep.lhs = 0.5 * per.value;
  rep.rhs = per.value;
  rep.slack = std::min(lower_slack, upper_slack);
  rep.holds = rep.slack >= -rep.tol;
  std::ostringstream os;
  os << "c_k=" << ck.value << " c_per=" << per.value << " tight="
     << (lower_slack <= upper_slack ? "lower" : "upper");
  rep.inputs = os.str();
  return rep;
}

double inscribed_frame_ball_radius(const BodyPtr& body, const Frame& frame) {
  const int d = body->dim();
  Vec z = find_interior_frame_point(*body, frame);

  // depth(z) = min over directions of (h(w) - <z, w>); maximize over the
  // frame subspace by pattern search.
  std::mt19937_64 rng(7531u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  for (int s = 0; s < 256 * d; ++s) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = gauss(rng);
    dirs.push_back(u.normalized());
  }
  auto depth = [&](const Vec& zz) {
    double m = 1e300;
    for (const auto& w : dirs) m = std::min(m, body->support(w).value - zz.dot(w));
    return m;
  };

  double best = depth(z);
  double h = 0.25 * (bounding_radii(*body).maxCoeff() + 1.0);
  for (int it = 0; it < 200 && h > 1e-9; ++it) {
    bool improved = false;
    for (int i = 0; i < frame.n + frame.k; ++i) {
      const int coord = (i < frame.n) ? i : frame.n + (i - frame.n);
      for (double s : {-h, h}) {
        Vec zz = z;
        zz(coord) += s;
        const double m = depth(zz);
        if (m > best) {
          best = m;
          z = zz;
          improved = true;
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  if (best <= 0) return 0.0;
  // Sampled depth overestimates the true inradius; verify on the sphere and
  // shrink until the ball fits.
  double r = best;
  std::mt19937_64 vrng(8642u);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool ok = true;
    for (int s = 0; s < 512 && ok; ++s) {
      Vec u(d);
      for (int i = 0; i < d; ++i) u(i) = gauss(vrng);
      u.normalize();
      if (!body->contains(z + r * u, 1e-9)) ok = false;
    }
    if (ok) break;
    r *= 0.995;
  }
  return r;
}

InequalityReport inscribed_ball_lower_bound(const BodyPtr& body,
                                            const Frame& frame,
                                            const SolveConfig& cfg) {
  const double r = inscribed_frame_ball_radius(body, frame);
  CapacityResult cap = capacity_tolerant(body, frame, cfg);
  InequalityReport rep;
  rep.formula_id = "inscribed_ball_lower_bound";
  rep.lhs = frame.periodic() ? kPi * r * r : 0.5 * kPi * r * r;
  rep.rhs = cap.value;
  rep.tol = (cap.method == "dual-solver") ? solver_tolerance(cfg) * cap.value
                                          : 1e-9;
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -rep.tol;
  std::ostringstream os;
  os << "r=" << r;
  rep.inputs = os.str();
  return rep;
}

InequalityReport viterbo_ratio(const BodyPtr& body, const Frame& frame,
                               const SolveConfig& cfg, bool exact_volume_only,
                               std::uint64_t mc_seed,
                               std::int64_t mc_samples) {
  if (frame.k != frame.n - 1)
    throw std::invalid_argument("viterbo_ratio: requires k = n - 1");
  CapacityResult cap = capacity_tolerant(body, frame, cfg);

  VolumeResult vminus, vplus;
  try {
    vminus = volume_half(*body, -1, mc_seed, mc_samples);
    vplus = volume_half(*body, +1, mc_seed + 1, mc_samples);
  } catch (const std::exception&) {
    if (exact_volume_only) throw;
    throw;
  }
  const double vmin = std::min(vminus.value, vplus.value);
  const double verr = std::max(vminus.stderr_est, vplus.stderr_est);
  double fact = 1.0;
  for (int i = 2; i <= frame.n; ++i) fact *= i;

  InequalityReport rep;
  rep.formula_id = "viterbo_ratio";
  rep.lhs = std::pow(cap.value, frame.n) / (fact * vmin);
  rep.rhs = 1.0;
  // 3 sigma MC slack plus the solver tolerance when applicable.
  double tol = 3.0 * verr / std::max(vmin, 1e-300);
  if (cap.method == "dual-solver")
    tol += frame.n * solver_tolerance(cfg);
  rep.tol = std::max(tol, 1e-9);
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -rep.tol;
  std::ostringstream os;
  os << "vol_minus=" << vminus.value << " vol_plus=" << vplus.value;
  rep.inputs = os.str();
  return rep;
}

InequalityReport mean_width_bound(const BodyPtr& q_body, const BodyPtr& p_body,
                                  const SolveConfig& cfg,
                                  std::uint64_t mc_seed,
                                  std::int64_t mc_samples) {
  if (!sampled_centrally_symmetric(*p_body))
    throw std::domain_error("mean_width_bound: p-block body must be "
                            "centrally symmetric");
  const int n = q_body->dim();
  BodyPtr prod = make_lagrangian_product(q_body, p_body);
  const Frame frame(n, 0);
  CapacityResult cap = capacity_tolerant(prod, frame, cfg);
  const double rq = mean_width_symmetrized(*q_body, mc_seed, mc_samples);
  const double rp = mean_width_symmetrized(*p_body, mc_seed + 1, mc_samples);

  InequalityReport rep;
  rep.formula_id = "mean_width_bound";
  rep.lhs = cap.value;
  rep.rhs = 2.0 * rq * rp;
  rep.tol = 0.03 * (rep.lhs + rep.rhs);  // MC widths plus solver tolerance
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -rep.tol;
  std::ostringstream os;
  os << "r_q=" << rq << " r_p=" << rp;
  rep.inputs = os.str();
  return rep;
}

}  // namespace cochord
