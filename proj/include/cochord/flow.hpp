/**
 * @file flow.hpp
 * @brief Closed-form Hamiltonian flow on quadratic energy surfaces, the
 *        leafwise return spectrum of ellipsoids, and the explicit minimal
 *        chord of off-center balls.
 */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "cochord/frame.hpp"

namespace cochord {

/// H(z) = (1/2) <S (z - center), z - center> for symmetric positive
/// definite S.  Ellipsoid E(r_1..r_n) uses S = Diag(2/r_i^2) duplicated.
struct QuadraticSurface {
  Mat S;
  Vec center;

  static QuadraticSurface ellipsoid(const Vec& radii);
  static QuadraticSurface offcenter_ball(int n, double a, double radius);

  double energy(const Vec& z) const;
};

/// exp(tau J S)(z - center) + center; block cosine/sine form when S is
/// diagonal with paired entries, matrix exponential otherwise.
Vec flow(const QuadraticSurface& surface, const Vec& z, double tau);

enum class SpectrumClass { V1Mode, V0Mode };

struct SpectrumEntry {
  double action = 0.0;
  SpectrumClass cls = SpectrumClass::V0Mode;
  int axis = 0;      // 1-based axis index j
  int multiple = 1;  // m
};

/// All leafwise-chord actions <= cutoff on the ellipsoid boundary:
/// m pi r_j^2 for j <= k, (m pi / 2) r_j^2 for j > k; ascending, ties kept
/// as separate entries sorted by (action, axis, multiple).
std::vector<SpectrumEntry> return_spectrum(const Frame& frame, const Vec& radii,
                                           double action_cutoff);

/// Initial condition on the ellipsoid boundary realizing a spectrum entry,
/// and its return time.
Vec spectrum_initial_condition(const Frame& frame, const Vec& radii,
                               const SpectrumEntry& entry);
double spectrum_return_time(const SpectrumEntry& entry);

struct Chord {
  DiscretePath path;
  double action = 0.0;       // exact closed-form action
  double return_time = 0.0;  // flow time of the chord
  std::map<std::string, double> residuals;
};

/// The minimal leafwise chord on the boundary of B^{2n}((0..0,a), R) for
/// k < n: an arc in the (q_n, p_n) plane, sampled with the given count.
/// Its exact action is (arcsin(r) - r sqrt(1 - r^2)) R^2, r = sqrt(1-a^2/R^2).
Chord ball_chord(const Frame& frame, double a, double radius,
                 int samples = 2048);

/// Return time of the minimal chord for the quadratic family
/// { H < e } = sqrt(e) E(r_1..r_n): equal to the capacity of E(r) itself,
/// independent of e, and equal to d/de of the capacity of the family.
double quadratic_return_time(const Frame& frame, const Vec& radii);

/// CSV export of a spectrum: "action,class,axis,multiple" per row.
std::string spectrum_csv(const std::vector<SpectrumEntry>& spectrum);

}  // namespace cochord
