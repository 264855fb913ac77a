#include "cochord/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <thread>

namespace cochord {

namespace {

constexpr double kPi = std::numbers::pi;

int thread_budget(const SolveConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("COCHORD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

ObjectiveEval objective(const Body& body, const Mat& samples, double p,
                        bool with_subgradient) {
  const int d = static_cast<int>(samples.rows());
  const int n = d / 2;
  const int N = static_cast<int>(samples.cols()) - 1;
  ObjectiveEval out;
  if (with_subgradient) out.subgradient = Mat::Zero(d, N + 1);
  Vec w(d), sigma(d), jsig(d);
  for (int j = 0; j < N; ++j) {
    const Vec diff = samples.col(j + 1) - samples.col(j);
    // w = -J (N diff): (q,p) -> (p, -q) scaled by N.
    w.head(n) = static_cast<double>(N) * diff.tail(n);
    w.tail(n) = -static_cast<double>(N) * diff.head(n);
    GaugeEval h = body.support(w);
    const double half = 0.5 * std::max(h.value, 0.0);
    out.value += std::pow(half, p) / N;
    if (!with_subgradient) continue;
    // subgradient of (h/2)^p composed with w(x).
    const double coeff = 0.5 * p * std::pow(half, p - 1.0);
    sigma = coeff * h.subgradient;
    jsig.head(n) = -sigma.tail(n);
    jsig.tail(n) = sigma.head(n);
    out.subgradient.col(j + 1) += jsig;
    out.subgradient.col(j) -= jsig;
  }
  return out;
}

Mat action_gradient(const Mat& samples) {
  const int d = static_cast<int>(samples.rows());
  const int n = d / 2;
  const int N = static_cast<int>(samples.cols()) - 1;
  Mat g = Mat::Zero(d, N + 1);
  auto addJ = [&](int col, const auto& v, double s) {
    g.col(col).head(n) += -s * v.tail(n);
    g.col(col).tail(n) += s * v.head(n);
  };
  for (int i = 0; i <= N; ++i) {
    if (i > 0) addJ(i, samples.col(i - 1), 0.5);
    if (i < N) addJ(i, samples.col(i + 1), -0.5);
  }
  return g;
}

Vec find_interior_frame_point(const Body& body, const Frame& frame) {
  const int d = body.dim();
  if (d != frame.ambient_dim())
    throw std::invalid_argument("solve: body dimension does not match frame");

  // Sampled outer normals: coordinate axes plus a fixed random set.
  std::vector<Vec> dirs;
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::Zero(d);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937_64 rng(20240915u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < 64 * d; ++s) {
    Vec u(d);
    for (int i = 0; i < d; ++i) u(i) = gauss(rng);
    dirs.push_back(u.normalized());
  }
  std::vector<double> h(dirs.size());
  for (size_t i = 0; i < dirs.size(); ++i) h[i] = body.support(dirs[i]).value;

  // Margin m(z) = min_i (h_i - <z, dirs_i>), maximized over the frame
  // subspace by supergradient ascent.
  auto margin = [&](const Vec& z, size_t& arg) {
    double m = 1e300;
    for (size_t i = 0; i < dirs.size(); ++i) {
      const double v = h[i] - z.dot(dirs[i]);
      if (v < m) {
        m = v;
        arg = i;
      }
    }
    return m;
  };

  Vec lo(d), hi(d);
  {
    Vec e = Vec::Zero(d);
    for (int i = 0; i < d; ++i) {
      e(i) = 1.0;
      hi(i) = body.support(e).value;
      e(i) = -1.0;
      lo(i) = -body.support(e).value;
      e(i) = 0.0;
    }
  }
  Vec z = project(frame, Subspace::Rnk, Vec(0.5 * (lo + hi)));
  const double scale = (hi - lo).norm() + 1.0;
  size_t arg = 0;
  double best_m = margin(z, arg);
  Vec best_z = z;
  for (int it = 1; it <= 400; ++it) {
    const Vec step_dir = project(frame, Subspace::Rnk, Vec(-dirs[arg]));
    z += (0.5 * scale / it) * step_dir;
    const double m = margin(z, arg);
    if (m > best_m) {
      best_m = m;
      best_z = z;
    }
  }
  if (best_m <= 1e-10 * scale || !body.contains(best_z, 1e-9))
    throw std::domain_error(
        "solve: body does not meet the frame subspace (empty intersection)");
  return best_z;
}

namespace {

void finsler_reparameterize(const Body& body, Mat& X);

// Boundary-arc seeds: the body boundary's section in a symplectic
// coordinate plane, traversed half-way (leaf planes, either sense) or fully
// (periodic planes), plus noisy and Gaussian variants.  Arcs of product-like
// bodies are already chords, so these start essentially converged.
Mat seed_path(const Body& centered, const ConstraintSpace& space,
              std::mt19937_64& rng, int variant) {
  const Frame& fr = space.frame();
  const int n = fr.n, k = fr.k, N = space.segments();
  const int d = 2 * n;
  Mat X = Mat::Zero(d, N + 1);
  std::normal_distribution<double> gauss(0.0, 1.0);

  struct Mode {
    int plane;
    bool full_loop;
    double sense;
  };
  std::vector<Mode> modes;
  for (int i = k; i < n; ++i) {
    modes.push_back({i, false, 1.0});
    modes.push_back({i, false, -1.0});
  }
  for (int i = 0; i < k; ++i) modes.push_back({i, true, 1.0});
  const int nmodes = static_cast<int>(modes.size());
  const bool pure = variant < nmodes;
  const double noise = pure ? 0.0 : 0.25;

  if (nmodes > 0) {
    const auto [plane, full_loop, sense] = modes[variant % nmodes];
    Vec dir = Vec::Zero(d);
    for (int j = 0; j <= N; ++j) {
      const double th =
          (full_loop ? 2.0 : 1.0) * kPi * sense * j / N;
      dir.setZero();
      dir(plane) = std::cos(th);
      dir(n + plane) = std::sin(th);
      const double g = centered.gauge(dir).value;
      X.col(j) = (g > 1e-12) ? Vec(dir / g) : dir;
    }
  }
  if (noise > 0.0 || nmodes == 0) {
    for (int j = 0; j <= N; ++j)
      for (int i = 0; i < d; ++i) X(i, j) += noise * gauss(rng);
    // Smooth the noise once so the seed has finite objective energy.
    Mat Y = X;
    for (int j = 1; j < N; ++j)
      Y.col(j) = 0.25 * X.col(j - 1) + 0.5 * X.col(j) + 0.25 * X.col(j + 1);
    X = Y;
  }
  finsler_reparameterize(centered, X);
  space.project(X);
  return X;
}

bool normalize_action(const ConstraintSpace& space, Mat& X) {
  double a = action(X);
  if (std::abs(a) < 1e-12) return false;
  if (a < 0) {
    X = X.rowwise().reverse().eval();  // time reversal flips the action sign
    space.project(X);
    a = action(X);
    if (a <= 1e-12) return false;
  }
  X /= std::sqrt(a);
  return true;
}

struct RestartOutcome {
  double value = 1e300;
  double value_initial = 1e300;
  Mat X;
  bool converged = false;
  int iterations = 0;
  double stationarity = 0.0;
};

// Resample the polyline so every segment carries the same support length
// h(-J dx).  This is the exact minimizer of the objective over time
// reparameterizations of a fixed geometric path (the functional is
// velocity-homogeneous, so uneven time allocation only wastes value), a
// direction the subgradient steps crawl along very slowly.
void finsler_reparameterize(const Body& body, Mat& X) {
  const int d = static_cast<int>(X.rows());
  const int n = d / 2;
  const int N = static_cast<int>(X.cols()) - 1;
  Vec cum(N + 1);
  cum(0) = 0.0;
  Vec w(d);
  for (int j = 0; j < N; ++j) {
    const Vec diff = X.col(j + 1) - X.col(j);
    w.head(n) = diff.tail(n);
    w.tail(n) = -diff.head(n);
    cum(j + 1) = cum(j) + std::max(body.support(w).value, 0.0);
  }
  const double total = cum(N);
  if (total <= 1e-14) return;
  Mat Y(d, N + 1);
  Y.col(0) = X.col(0);
  Y.col(N) = X.col(N);
  int seg = 0;
  for (int m = 1; m < N; ++m) {
    const double target = total * m / N;
    while (seg < N - 1 && cum(seg + 1) < target) ++seg;
    const double span = cum(seg + 1) - cum(seg);
    const double frac = (span > 1e-300) ? (target - cum(seg)) / span : 0.0;
    Y.col(m) = (1.0 - frac) * X.col(seg) + frac * X.col(seg + 1);
  }
  X = std::move(Y);
}

// Polyak-style target steps with an adaptive surrogate gap.  The gap decays
// when the best value stalls and recovers slightly on improvement; the run
// counts as converged when the gap drops below the floor.
RestartOutcome run_descent(const Body& body, const ConstraintSpace& space,
                           Mat X, double p, int max_iters, double delta_floor) {
  RestartOutcome out;
  if (!normalize_action(space, X)) return out;

  double f_best = objective(body, X, p, false).value;
  out.value_initial = f_best;
  Mat X_best = X;
  double delta = 0.08;
  int stall = 0;

  for (int it = 1; it <= max_iters; ++it) {
    ObjectiveEval obj = objective(body, X, p, true);
    Mat G = obj.subgradient - (0.5 * p * obj.value) * action_gradient(X);
    space.project(G);
    const double gn2 = G.squaredNorm();
    out.iterations = it;
    out.stationarity = std::sqrt(gn2);
    if (obj.value < f_best * (1.0 - 1e-12)) {
      f_best = obj.value;
      X_best = X;
      stall = 0;
      delta = std::min(delta * 1.02, 0.08);
    } else if (++stall > 200) {
      delta *= 0.5;
      stall = 0;
      if (delta < delta_floor) {
        out.converged = true;
        break;
      }
    }
    if (gn2 < 1e-26) {
      out.converged = true;
      break;
    }
    double step = (obj.value - (1.0 - delta) * f_best) / gn2;
    Mat Xn = X - step * G;
    double a = action(Xn);
    for (int guard = 0; guard < 8 && a <= 1e-10; ++guard) {
      step *= 0.25;
      Xn = X - step * G;
      a = action(Xn);
    }
    if (a <= 1e-10) break;
    X = Xn / std::sqrt(a);
    if (it % 128 == 0) {
      // Exact reparameterization of the current polyline, then reprojection;
      // both can only improve the (normalized) value.
      finsler_reparameterize(body, X);
      space.project(X);
      if (!normalize_action(space, X)) break;
      const double f_re = objective(body, X, p, false).value;
      if (f_re < f_best * (1.0 - 1e-12)) {
        f_best = f_re;
        X_best = X;
        stall = 0;
      }
    }
  }
  // Report the stationarity residual at the returned minimizer.
  {
    ObjectiveEval obj = objective(body, X_best, p, true);
    Mat G = obj.subgradient - (0.5 * p * obj.value) * action_gradient(X_best);
    space.project(G);
    out.stationarity = G.norm();
  }
  out.value = f_best;
  out.X = X_best;
  return out;
}

// Anneal the polyhedral smoothing before the exact run; the final value and
// minimizer always come from the exact support function.
RestartOutcome run_staged(const Body& exact, const ConstraintSpace& space,
                          Mat X, double p, int max_iters) {
  static const double kQLadder[] = {8.0, 24.0, 72.0, 216.0};
  if (BodyPtr first = exact.smoothed(kQLadder[0])) {
    const int stage_iters = std::max(max_iters / 4, 300);
    RestartOutcome stage =
        run_descent(*first, space, std::move(X), p, stage_iters, 1e-4);
    if (stage.value >= 1e300) return stage;
    for (int s = 1; s < 4; ++s) {
      stage = run_descent(*exact.smoothed(kQLadder[s]), space,
                          std::move(stage.X), p, stage_iters, 1e-4);
      if (stage.value >= 1e300) return stage;
    }
    X = std::move(stage.X);
  }
  return run_descent(exact, space, std::move(X), p, max_iters, 1e-6);
}

struct CarrierBuild {
  Chord chord;
  Vec a0;
  double gauge_variation = 0.0;
};

CarrierBuild build_carrier(const Body& translated, const Frame& frame,
                           const Mat& X, double p, double mu,
                           const Vec& shift_back, double capacity) {
  const int d = static_cast<int>(X.rows());
  const int n = d / 2;
  const int N = static_cast<int>(X.cols()) - 1;

  // Time-average of the stationarity subgradient; its frame component is
  // the multiplier a0.
  Vec rho_mean = Vec::Zero(d);
  Vec w(d);
  for (int j = 0; j < N; ++j) {
    const Vec diff = X.col(j + 1) - X.col(j);
    w.head(n) = static_cast<double>(N) * diff.tail(n);
    w.tail(n) = -static_cast<double>(N) * diff.head(n);
    GaugeEval h = translated.support(w);
    const double half = 0.5 * std::max(h.value, 0.0);
    rho_mean += (0.5 * p * std::pow(half, p - 1.0) / N) * h.subgradient;
  }
  const Vec a0 = project(frame, Subspace::Rnk, rho_mean);

  // v = (p mu / 2) u + a0, rescaled onto the boundary sample by sample.
  const double lam = 0.5 * p * mu;
  Mat chord_pts(d, N + 1);
  double jmin = 1e300, jmax = 0.0;
  for (int i = 0; i <= N; ++i) {
    const Vec v = lam * X.col(i) + a0;
    const double jv = translated.gauge(v).value;
    jmin = std::min(jmin, jv);
    jmax = std::max(jmax, jv);
    chord_pts.col(i) = (jv > 1e-300) ? Vec(v / jv) : v;
  }

  CarrierBuild out;
  out.a0 = a0;
  out.gauge_variation = (jmax - jmin) / std::max(jmax, 1e-300);

  double on_boundary = 0.0;
  for (int i = 0; i <= N; ++i)
    on_boundary = std::max(
        on_boundary, std::abs(translated.gauge(chord_pts.col(i)).value - 1.0));
  const Vec ends = chord_pts.col(N) - chord_pts.col(0);
  const double leaf_off =
      (ends - project(frame, Subspace::V0, ends)).norm();
  const double ep0 = dist_to_frame(frame, chord_pts.col(0));
  const double ep1 = dist_to_frame(frame, chord_pts.col(N));
  const double act = action(chord_pts);

  // Back to the original body; the shift lies on the frame subspace, which
  // leaves the action and all residuals unchanged.
  chord_pts.colwise() += shift_back;

  out.chord.path = DiscretePath(frame, chord_pts);
  out.chord.action = act;
  out.chord.return_time = capacity;
  out.chord.residuals["on_boundary"] = on_boundary;
  out.chord.residuals["endpoint_start"] = ep0;
  out.chord.residuals["endpoint_end"] = ep1;
  out.chord.residuals["leaf_offset"] = leaf_off;
  out.chord.residuals["action_gap"] = std::abs(act - capacity);
  out.chord.residuals["gauge_variation"] = out.gauge_variation;
  return out;
}

}  // namespace

SolveResult solve(const BodyPtr& body, const Frame& frame,
                  const SolveConfig& cfg) {
  if (cfg.N < 16) throw std::invalid_argument("solve: need N >= 16");
  if (cfg.p < 1.0) throw std::invalid_argument("solve: need p >= 1");
  if (!(cfg.tol_rel > 0.0) || cfg.tol_rel > 1e-2)
    throw std::invalid_argument("solve: tol_rel must lie in (0, 1e-2]");

  const Vec z0 = find_interior_frame_point(*body, frame);
  const BodyPtr centered = make_translate(-z0, body);

  // Coarse-to-fine ladder of segment counts.
  std::vector<int> levels{cfg.N};
  while (levels.back() > 64 && levels.back() % 2 == 0)
    levels.push_back(levels.back() / 2);
  std::reverse(levels.begin(), levels.end());

  const int nthreads = std::max(1, thread_budget(cfg));
  SolveDiagnostics diag;

  auto run_level = [&](const ConstraintSpace& space,
                       std::vector<Mat> starts, int iters, bool staged) {
    std::vector<RestartOutcome> outs(starts.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= starts.size()) break;
        outs[i] = staged
                      ? run_staged(*centered, space, std::move(starts[i]),
                                   cfg.p, iters)
                      : run_descent(*centered, space, std::move(starts[i]),
                                    cfg.p, iters, 1e-6);
      }
    };
    const int nt =
        std::min<int>(nthreads, static_cast<int>(starts.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return outs;
  };

  // Coarse level: all restarts.
  ConstraintSpace coarse_space(frame, levels.front());
  std::vector<Mat> starts;
  {
    std::mt19937_64 rng(cfg.seed);
    for (int r = 0; r < std::max(1, cfg.restarts); ++r)
      starts.push_back(seed_path(*centered, coarse_space, rng, r));
  }
  std::vector<RestartOutcome> outs =
      run_level(coarse_space, std::move(starts), cfg.max_iters, true);

  std::stable_sort(outs.begin(), outs.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  for (const auto& o : outs) diag.restart_values.push_back(o.value);
  if (outs.empty() || outs.front().value >= 1e300)
    throw std::domain_error("solve: no restart produced positive action");

  const size_t keep =
      std::min<size_t>(3, std::count_if(outs.begin(), outs.end(), [](auto& o) {
        return o.value < 1e300;
      }));
  std::vector<RestartOutcome> front(outs.begin(), outs.begin() + keep);
  diag.iterations = 0;
  for (const auto& o : outs) diag.iterations += o.iterations;

  // Refinement ladder with the surviving candidates.
  for (size_t li = 1; li < levels.size(); ++li) {
    ConstraintSpace space(frame, levels[li]);
    std::vector<Mat> warm;
    for (auto& o : front) {
      Mat X = resample_path(o.X, levels[li]);
      space.project(X);
      warm.push_back(std::move(X));
    }
    const int iters = std::max(cfg.max_iters / 2, 500);
    std::vector<RestartOutcome> refined =
        run_level(space, std::move(warm), iters, false);
    std::stable_sort(refined.begin(), refined.end(),
                     [](const auto& a, const auto& b) { return a.value < b.value; });
    for (const auto& o : refined) diag.iterations += o.iterations;
    front = std::move(refined);
  }

  const RestartOutcome& best = front.front();
  if (best.value >= 1e300)
    throw std::domain_error("solve: degenerate starts at the final level");

  ConstraintSpace final_space(frame, levels.back());
  const double mu = best.value;
  const double capacity = std::pow(mu, 2.0 / cfg.p);

  SolveResult res;
  res.capacity = capacity;
  res.minimizer = DiscretePath(frame, best.X);
  res.normalization_shift = z0;
  CarrierBuild cb =
      build_carrier(*centered, frame, best.X, cfg.p, mu, z0, capacity);
  res.carrier = std::move(cb.chord);
  res.multiplier_a0 = cb.a0;
  diag.stationarity = best.stationarity;
  diag.constraint_residual = final_space.max_residual(best.X);
  diag.gauge_variation = cb.gauge_variation;
  diag.converged =
      best.converged ||
      (best.value_initial - best.value) <= cfg.tol_rel * best.value;
  res.diagnostics = diag;

  if (!res.diagnostics.converged) {
    throw ConvergenceError(
        "solve: objective did not stabilize within the iteration budget; "
        "best value is an upper bound",
        res);
  }
  return res;
}

std::map<double, double> capacity_p_consistency(const BodyPtr& body,
                                                const Frame& frame,
                                                const SolveConfig& cfg,
                                                const std::vector<double>& ps) {
  std::map<double, double> out;
  for (double p : ps) {
    SolveConfig c = cfg;
    c.p = p;
    out[p] = solve(body, frame, c).capacity;
  }
  return out;
}

Mat resample_path(const Mat& samples, int new_segments) {
  const int d = static_cast<int>(samples.rows());
  const int N = static_cast<int>(samples.cols()) - 1;
  Mat out(d, new_segments + 1);
  for (int j = 0; j <= new_segments; ++j) {
    const double t = static_cast<double>(j) / new_segments * N;
    const int i0 = std::min(static_cast<int>(t), N - 1);
    const double frac = t - i0;
    out.col(j) = (1.0 - frac) * samples.col(i0) + frac * samples.col(i0 + 1);
  }
  return out;
}

RefineResult refine(const BodyPtr& body, const Frame& frame,
                    const SolveConfig& cfg, const std::vector<int>& ladder) {
  if (ladder.empty()) throw std::invalid_argument("refine: empty ladder");
  for (size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1])
      throw std::invalid_argument("refine: ladder must increase");

  RefineResult out;
  const Vec z0 = find_interior_frame_point(*body, frame);
  const BodyPtr centered = make_translate(-z0, body);

  Mat warm;
  for (size_t li = 0; li < ladder.size(); ++li) {
    SolveConfig c = cfg;
    c.N = ladder[li];
    if (li == 0) {
      out.levels.push_back(solve(body, frame, c));
      warm = out.levels.back().minimizer.samples;
      continue;
    }
    ConstraintSpace space(frame, c.N);
    Mat X = resample_path(warm, c.N);
    space.project(X);
    RestartOutcome o =
        run_descent(*centered, space, X, c.p, c.max_iters, 1e-6);
    if (o.value >= 1e300)
      throw std::domain_error("refine: warm start degenerated");
    const double capacity = std::pow(o.value, 2.0 / c.p);
    SolveResult r;
    r.capacity = capacity;
    r.minimizer = DiscretePath(frame, o.X);
    r.normalization_shift = z0;
    CarrierBuild cb =
        build_carrier(*centered, frame, o.X, c.p, o.value, z0, capacity);
    r.carrier = std::move(cb.chord);
    r.multiplier_a0 = cb.a0;
    r.diagnostics.converged =
        o.converged || (o.value_initial - o.value) <= c.tol_rel * o.value;
    r.diagnostics.iterations = o.iterations;
    r.diagnostics.stationarity = o.stationarity;
    r.diagnostics.gauge_variation = cb.gauge_variation;
    r.diagnostics.constraint_residual = space.max_residual(o.X);
    out.levels.push_back(std::move(r));
    warm = out.levels.back().minimizer.samples;
  }
  // Second-order Richardson estimate from the last two levels.
  if (out.levels.size() >= 2) {
    const double cN = out.levels[out.levels.size() - 2].capacity;
    const double c2N = out.levels.back().capacity;
    out.extrapolated = c2N + (c2N - cN) / 3.0;
  } else {
    out.extrapolated = out.levels.back().capacity;
  }
  return out;
}

}  // namespace cochord
