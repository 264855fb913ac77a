#include "cochord/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "cochord/closed_forms.hpp"

namespace cochord {

namespace {
constexpr double kPi = std::numbers::pi;

// True when S = Diag(d_1..d_n, d_1..d_n): the flow splits into plane
// rotations with angular speed d_i.
bool paired_diagonal(const Mat& S, Vec& speeds) {
  const int d = static_cast<int>(S.rows());
  if (d % 2) return false;
  const int n = d / 2;
  if (!S.isDiagonal(1e-14)) return false;
  speeds.resize(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(S(i, i) - S(n + i, n + i)) > 1e-14 * std::abs(S(i, i)))
      return false;
    speeds(i) = S(i, i);
  }
  return true;
}

}  // namespace

QuadraticSurface QuadraticSurface::ellipsoid(const Vec& radii) {
  const int n = static_cast<int>(radii.size());
  QuadraticSurface s;
  s.S = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const double v = 2.0 / (radii(i) * radii(i));
    s.S(i, i) = v;
    s.S(n + i, n + i) = v;
  }
  s.center = Vec::Zero(2 * n);
  return s;
}

QuadraticSurface QuadraticSurface::offcenter_ball(int n, double a,
                                                  double radius) {
  QuadraticSurface s;
  s.S = (2.0 / (radius * radius)) * Mat::Identity(2 * n, 2 * n);
  s.center = Vec::Zero(2 * n);
  s.center(2 * n - 1) = a;
  return s;
}

double QuadraticSurface::energy(const Vec& z) const {
  const Vec d = z - center;
  return 0.5 * d.dot(S * d);
}

Vec flow(const QuadraticSurface& surface, const Vec& z, double tau) {
  const int d = static_cast<int>(surface.S.rows());
  const int n = d / 2;
  const Vec w = z - surface.center;
  Vec speeds;
  if (paired_diagonal(surface.S, speeds)) {
    Vec out(d);
    for (int i = 0; i < n; ++i) {
      const double c = std::cos(speeds(i) * tau);
      const double s = std::sin(speeds(i) * tau);
      out(i) = c * w(i) - s * w(n + i);
      out(n + i) = s * w(i) + c * w(n + i);
    }
    return out + surface.center;
  }
  Mat J = Mat::Zero(d, d);
  J.topRightCorner(n, n) = -Mat::Identity(n, n);
  J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  const Mat E = (tau * J * surface.S).exp();
  return E * w + surface.center;
}

std::vector<SpectrumEntry> return_spectrum(const Frame& frame, const Vec& radii,
                                           double action_cutoff) {
  if ((radii.array() <= 0).any())
    throw std::invalid_argument("return_spectrum: radii must be positive");
  if (action_cutoff <= 0)
    throw std::invalid_argument("return_spectrum: cutoff must be positive");
  std::vector<SpectrumEntry> out;
  for (int j = 0; j < frame.n; ++j) {
    const double r2 = radii(j) * radii(j);
    const double base = (j < frame.k) ? kPi * r2 : 0.5 * kPi * r2;
    const SpectrumClass cls =
        (j < frame.k) ? SpectrumClass::V1Mode : SpectrumClass::V0Mode;
    for (int m = 1; m * base <= action_cutoff; ++m)
      out.push_back({m * base, cls, j + 1, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.action != b.action) return a.action < b.action;
    if (a.axis != b.axis) return a.axis < b.axis;
    return a.multiple < b.multiple;
  });
  return out;
}

Vec spectrum_initial_condition(const Frame& frame, const Vec& radii,
                               const SpectrumEntry& entry) {
  const int n = frame.n;
  Vec z = Vec::Zero(2 * n);
  z(entry.axis - 1) = radii(entry.axis - 1);
  return z;
}

double spectrum_return_time(const SpectrumEntry& entry) {
  return entry.action;  // A(gamma_z) = T on the unit level set
}

Chord ball_chord(const Frame& frame, double a, double radius, int samples) {
  if (std::abs(a) >= radius)
    throw std::domain_error("ball_chord: need |a| < R");
  if (frame.periodic())
    throw std::domain_error("ball_chord: requires k < n");
  if (samples < 2) throw std::invalid_argument("ball_chord: samples >= 2");
  const int n = frame.n;
  const double r = std::sqrt(1.0 - (a / radius) * (a / radius));
  const double T = (a == 0.0) ? 0.5 * kPi : std::asin(r);

  // Start on the q_n axis; the sign rule keeps the arc on the far side of
  // the center.
  const double q0 = (a <= 0.0) ? radius * r : -radius * r;
  QuadraticSurface surf = QuadraticSurface::offcenter_ball(n, a, radius);
  Mat path(2 * n, samples + 1);
  Vec z0 = Vec::Zero(2 * n);
  z0(n - 1) = q0;
  for (int s = 0; s <= samples; ++s)
    path.col(s) = flow(surf, z0, T * s / samples);

  Chord out;
  out.path = DiscretePath(frame, path);
  out.action = (std::asin(r) - r * std::sqrt(1.0 - r * r)) * radius * radius;
  out.return_time = T;

  const Vec ends = path.col(samples) - path.col(0);
  out.residuals["endpoint_start"] = dist_to_frame(frame, path.col(0));
  out.residuals["endpoint_end"] = dist_to_frame(frame, path.col(samples));
  out.residuals["leaf_offset"] =
      (ends - project(frame, Subspace::V0, ends)).norm();
  double max_level = 0.0;
  for (int s = 0; s <= samples; ++s)
    max_level = std::max(
        max_level, std::abs((path.col(s) - surf.center).norm() - radius));
  out.residuals["on_boundary"] = max_level;
  out.residuals["action_quadrature_err"] =
      std::abs(action(out.path) - out.action);
  return out;
}

double quadratic_return_time(const Frame& frame, const Vec& radii) {
  return ellipsoid_capacity(frame, radii).value;
}

std::string spectrum_csv(const std::vector<SpectrumEntry>& spectrum) {
  std::ostringstream os;
  os << "action,class,axis,multiple\n";
  os.precision(17);
  for (const auto& e : spectrum)
    os << e.action << ','
       << (e.cls == SpectrumClass::V1Mode ? "V1" : "V0") << ',' << e.axis
       << ',' << e.multiple << '\n';
  return os.str();
}

}  // namespace cochord
