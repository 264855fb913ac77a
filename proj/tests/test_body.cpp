#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cochord/body.hpp"

using namespace cochord;

namespace {
constexpr double kPi = std::numbers::pi;

Vec vecd(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vec random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Vec v(d);
  do {
    for (int i = 0; i < d; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

// Brute-force support oracle: maximize <x, w> over a dense boundary sample.
double support_oracle_ellipsoid(const Vec& axes, const Vec& w,
                                std::mt19937_64& rng, int samples = 400000) {
  double best = -1e300;
  const int d = static_cast<int>(axes.size());
  for (int s = 0; s < samples; ++s) {
    Vec u = random_unit(rng, d);
    u.array() *= axes.array();
    best = std::max(best, u.dot(w));
  }
  return best;
}

}  // namespace

TEST_CASE("support of the unit ball is 1 in every unit direction") {
  auto ball = make_ball(4, 1.0);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Vec w = random_unit(rng, 4);
    CHECK(ball->support(w).value == doctest::Approx(1.0));
  }
}

TEST_CASE("support of an ellipsoid against a brute-force maximization") {
  // E(1,2) in R^4: frozen oracle value 2 at w = (0,1,0,0) (dense boundary
  // sampling attains 1.9999+; the exact supremum is r_2 = 2).
  auto body = make_ellipsoid(vecd({1, 2}));
  const Vec w = vecd({0, 1, 0, 0});
  CHECK(body->support(w).value == doctest::Approx(2.0));
  std::mt19937_64 rng(17);
  const double oracle = support_oracle_ellipsoid(vecd({1, 2, 1, 2}), w, rng);
  CHECK(body->support(w).value >= oracle - 1e-9);
  CHECK(body->support(w).value == doctest::Approx(oracle).epsilon(1e-3));
}

TEST_CASE("support of a box sums the interval supports") {
  auto box = make_box({{0.0, 2.0, 1.0, 3.0}});
  CHECK(box->support(vecd({1, 1})).value == doctest::Approx(5.0));
  CHECK(box->support(vecd({-1, 1})).value == doctest::Approx(3.0));
}

TEST_CASE("gauge of balls and ellipsoids at boundary points") {
  auto ball = make_ball(4, 2.5);
  std::mt19937_64 rng(5);
  const Vec z = 2.5 * random_unit(rng, 4);
  CHECK(ball->gauge(z).value == doctest::Approx(1.0));
  auto ell = make_ellipsoid(vecd({1, 2}));
  CHECK(ell->gauge(vecd({0, 2, 0, 0})).value == doctest::Approx(1.0));
}

TEST_CASE("gauge of a polydisc is the max per-disc norm ratio") {
  auto pd = make_polydisc(vecd({1, 1}));
  const Vec z = vecd({0.5, 0, 0.5, 0});
  // Ray-scaling oracle: the first lambda with z/lambda on the boundary; the
  // active factor is disc 1 with |(0.5, 0.5)| = sqrt(0.5).
  double lo = 0.0, hi = 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pd->contains(z / mid, 0.0) ? hi : lo) = mid;
  }
  CHECK(pd->gauge(z).value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(pd->gauge(z).value == doctest::Approx(hi).epsilon(1e-9));
}

TEST_CASE("gauge errors when 0 is not interior") {
  auto shifted = make_ball(vecd({0, 0, 0, 5}), 1.0);
  CHECK_THROWS_AS(shifted->gauge(vecd({1, 0, 0, 0})), std::domain_error);
  CHECK_THROWS_AS(make_polar(shifted), std::domain_error);
}

TEST_CASE("vertex polytope gauge via the membership program") {
  auto cube = make_cube(2, 1.0);
  CHECK(cube->gauge(vecd({1, 1})).value == doctest::Approx(1.0));
  CHECK(cube->gauge(vecd({0.5, -0.25})).value == doctest::Approx(0.5));
  CHECK(cube->contains(vecd({0.99, -0.99})));
  CHECK_FALSE(cube->contains(vecd({1.01, 0.0})));

  auto cross = make_cross_polytope(3, 1.0);
  CHECK(cross->gauge(vecd({0.25, 0.25, 0.25})).value ==
        doctest::Approx(0.75));
}

TEST_CASE("gauge-support duality j_D = h_{D polar}") {
  std::mt19937_64 rng(29);
  std::vector<BodyPtr> bodies{
      make_ball(4, 1.5), make_ellipsoid(vecd({1, 2})),
      make_polydisc(vecd({1.0, 0.7})), make_cube(4, 1.0),
      make_box({{-1.0, 2.0, 1.0, 3.0}, {-0.5, 0.5, 2.0, 2.0}})};
  for (const auto& b : bodies) {
    auto polar = make_polar(b);
    for (int t = 0; t < 40; ++t) {
      const Vec z = 2.0 * random_unit(rng, b->dim());
      CHECK(b->gauge(z).value ==
            doctest::Approx(polar->support(z).value).epsilon(1e-8));
      const Vec w = random_unit(rng, b->dim());
      CHECK(z.dot(w) <= b->gauge(z).value * b->support(w).value + 1e-9);
    }
  }
}

TEST_CASE("subgradients: Euler identity and the supporting inequality") {
  std::mt19937_64 rng(31);
  std::vector<BodyPtr> bodies{
      make_ball(4, 1.0), make_offcenter_ball(2, 0.4, 1.0),
      make_ellipsoid(vecd({0.8, 1.7})), make_polydisc(vecd({1.0, 1.3})),
      make_cube(4, 1.0), make_cross_polytope(4, 1.0),
      make_box({{-1.0, 2.0, 1.0, 3.0}, {-0.5, 0.5, 2.0, 2.0}}),
      make_psum(2.0, make_ball(4, 1.0), make_ellipsoid(vecd({1, 2})))};
  for (const auto& b : bodies) {
    for (int t = 0; t < 1000; ++t) {
      const Vec w = 1.5 * random_unit(rng, b->dim());
      const GaugeEval h = b->support(w);
      CHECK(h.subgradient.dot(w) == doctest::Approx(h.value).epsilon(1e-9));
      const Vec u = 1.5 * random_unit(rng, b->dim());
      const GaugeEval hu = b->support(u);
      CHECK(hu.value >= h.value + h.subgradient.dot(u - w) - 1e-8);
    }
  }
  // Gauge subgradients for the bodies with closed-form or LP gauges.
  std::vector<BodyPtr> gauged{
      make_ball(4, 1.0), make_offcenter_ball(2, 0.4, 1.0),
      make_ellipsoid(vecd({0.8, 1.7})), make_polydisc(vecd({1.0, 1.3})),
      make_cube(4, 1.0), make_cross_polytope(4, 1.0)};
  for (const auto& b : gauged) {
    for (int t = 0; t < 1000; ++t) {
      const Vec z = 1.5 * random_unit(rng, b->dim());
      const GaugeEval j = b->gauge(z);
      CHECK(j.subgradient.dot(z) == doctest::Approx(j.value).epsilon(1e-9));
      const Vec u = 1.5 * random_unit(rng, b->dim());
      CHECK(b->gauge(u).value >= j.subgradient.dot(u) - 1e-8);
    }
  }
}

TEST_CASE("legendre dual equals (h/2)^2 with consistent values") {
  auto ball = make_ball(4, 1.0);
  CHECK(legendre_dual(*ball, vecd({2, 0, 0, 0})).value == doctest::Approx(1.0));
  auto ell = make_ellipsoid(vecd({1, 2}));
  CHECK(legendre_dual(*ell, vecd({0, 2, 0, 0})).value == doctest::Approx(4.0));
  CHECK(legendre_dual(*ell, Vec::Zero(4)).value == doctest::Approx(0.0));
}

TEST_CASE("legendre dual matches the brute-force conjugate on grids") {
  // sup_xi (<xi, w> - j^2(xi)) evaluated on a dense grid in R^2.
  auto disc = make_ball(2, 1.0);
  auto box2 = make_box({{-1.0, 1.0, 0.5, 1.5}});
  for (const auto& b : {disc, box2}) {
    for (const Vec& w : {vecd({0.7, -0.3}), vecd({1.2, 0.4}), vecd({0, 1})}) {
      double best = -1e300;
      const int G = 400;
      for (int i = 0; i <= G; ++i)
        for (int j = 0; j <= G; ++j) {
          Vec xi = vecd({-3.0 + 6.0 * i / G, -3.0 + 6.0 * j / G});
          const double jz = b->gauge(xi).value;
          best = std::max(best, xi.dot(w) - jz * jz);
        }
      CHECK(legendre_dual(*b, w).value == doctest::Approx(best).epsilon(1e-4));
    }
  }
  // And one 4-dimensional spot check on a coarser grid.
  auto ell = make_ellipsoid(vecd({1, 2}));
  const Vec w = vecd({0.5, 1.0, -0.5, 0.25});
  double best = -1e300;
  const int G = 28;
  for (int a = 0; a <= G; ++a)
    for (int b2 = 0; b2 <= G; ++b2)
      for (int c = 0; c <= G; ++c)
        for (int d = 0; d <= G; ++d) {
          Vec xi(4);
          xi << -2.5 + 5.0 * a / G, -2.5 + 5.0 * b2 / G, -2.5 + 5.0 * c / G,
              -2.5 + 5.0 * d / G;
          const double jz = ell->gauge(xi).value;
          best = std::max(best, xi.dot(w) - jz * jz);
        }
  CHECK(legendre_dual(*ell, w).value >= best - 1e-9);
  CHECK(legendre_dual(*ell, w).value == doctest::Approx(best).epsilon(2e-2));
}

TEST_CASE("p-sum with p = 1 is the Minkowski sum of supports") {
  auto a = make_ellipsoid(vecd({1, 2}));
  auto b = make_cube(4, 0.5);
  auto sum = make_psum(1.0, a, b);
  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) {
    const Vec w = random_unit(rng, 4);
    CHECK(sum->support(w).value ==
          doctest::Approx(a->support(w).value + b->support(w).value));
  }
}

TEST_CASE("psum with p > 1 requires the origin") {
  auto shifted = make_ball(vecd({0, 0, 0, 5}), 1.0);
  CHECK_THROWS_AS(make_psum(2.0, shifted, make_ball(4, 1.0)),
                  std::domain_error);
}

TEST_CASE("scaling acts linearly on supports and by degree on volumes") {
  auto e = make_ellipsoid(vecd({1, 2}));
  auto e3 = make_scale(3.0, e);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const Vec w = random_unit(rng, 4);
    CHECK(e3->support(w).value == doctest::Approx(3.0 * e->support(w).value));
  }
  CHECK(volume_exact(*e3).value ==
        doctest::Approx(std::pow(3.0, 4) * volume_exact(*e).value));
}

TEST_CASE("exact volumes") {
  CHECK(volume_exact(*make_ball(4, 1.0)).value ==
        doctest::Approx(kPi * kPi / 2.0));
  CHECK(volume_exact(*make_ellipsoid(vecd({1, 2}))).value ==
        doctest::Approx(kPi * kPi / 2.0 * 4.0));
  CHECK(volume_exact(*make_polydisc(vecd({1, 2}))).value ==
        doctest::Approx(kPi * kPi * 4.0));
  CHECK(volume_exact(*make_box({{0.0, 2.0, 1.0, 3.0}})).value ==
        doctest::Approx(8.0));
}

TEST_CASE("monte carlo volume agrees with the exact ball volume") {
  auto ball = make_ball(4, 1.0);
  const VolumeResult mc = volume_monte_carlo(*ball, 123, 1000000);
  const double exact = kPi * kPi / 2.0;
  CHECK(std::abs(mc.value - exact) < 3.0 * mc.stderr_est);
  CHECK_THROWS_AS(volume_monte_carlo(*ball, 1, 100), std::invalid_argument);
}

TEST_CASE("half volumes: center ball, off-center ball, box") {
  // n = 1, a = 0: the negative half of the unit disc has area pi/2.
  auto disc = make_offcenter_ball(1, 0.0, 1.0);
  CHECK(volume_half(*disc, -1).value == doctest::Approx(kPi / 2));
  // Off-center disc: exact closed form versus Monte Carlo.
  auto od = make_offcenter_ball(1, 0.6, 1.0);
  const double exact_minus = volume_half(*od, -1).value;
  const double theta = std::asin(0.8);
  CHECK(exact_minus == doctest::Approx(theta - 0.8 * 0.6).epsilon(1e-12));
  CHECK(volume_half(*od, +1).value + exact_minus ==
        doctest::Approx(kPi).epsilon(1e-12));
  // Off-center 4-ball: closed form versus an independent Monte Carlo oracle
  // over the minus part of the bounding box.
  auto ob = make_offcenter_ball(2, 0.6, 1.0);
  const VolumeResult half = volume_half(*ob, -1);
  CHECK(half.stderr_est == 0.0);  // closed-form path
  const double v_minus = half.value;
  auto plain = make_ball(vecd({0, 0, 0, 0.6}), 1.0);
  std::mt19937_64 rng2(73);
  std::uniform_real_distribution<double> ub(0.0, 1.0);
  std::int64_t inside = 0;
  const std::int64_t n_mc = 1500000;
  for (std::int64_t s = 0; s < n_mc; ++s) {
    Vec z(4);
    z << -1 + 2 * ub(rng2), -1 + 2 * ub(rng2), -1 + 2 * ub(rng2),
        -0.4 * ub(rng2);
    if (plain->contains(z, 0.0)) ++inside;
  }
  const double box_vol = 2.0 * 2.0 * 2.0 * 0.4;
  const double mc_oracle = box_vol * inside / n_mc;
  const double se = box_vol * std::sqrt(0.25 / n_mc);
  CHECK(std::abs(v_minus - mc_oracle) < 4.0 * se + 1e-6);
  // Box half volume is exact.
  auto box = make_box({{0.0, 2.0, 1.0, 3.0}});
  CHECK(volume_half(*box, +1).value == doctest::Approx(6.0));
  CHECK(volume_half(*box, -1).value == doctest::Approx(2.0));
}

TEST_CASE("mean width of symmetrized bodies") {
  CHECK(mean_width_symmetrized(*make_ball(3, 1.0), 5, 200000) ==
        doctest::Approx(1.0).epsilon(0.01));
  CHECK(mean_width_symmetrized(*make_interval_box({{-1.0, 1.0}}), 5, 200000) ==
        doctest::Approx(1.0).epsilon(0.01));
  // Square [-1,1]^2: dense quadrature oracle (4/pi) int_0^{pi/4} ... gives
  // 4/pi; frozen as 1.2732.
  const double mw =
      mean_width_symmetrized(*make_cube(2, 1.0), 5, 400000);
  CHECK(mw == doctest::Approx(4.0 / kPi).epsilon(0.02));
}

TEST_CASE("lagrangian product support and membership split into blocks") {
  Vec axes(2);
  axes << 1.0, 2.0;
  auto body = make_lagrangian_product(make_elliptic_ball(axes),
                                      make_ball(2, 1.0));
  CHECK(body->dim() == 4);
  CHECK(body->support(vecd({1, 0, 0, 0})).value == doctest::Approx(1.0));
  CHECK(body->support(vecd({0, 1, 0, 0})).value == doctest::Approx(2.0));
  CHECK(body->support(vecd({0, 0, 1, 0})).value == doctest::Approx(1.0));
  CHECK(body->contains(vecd({0.5, 1.0, 0.5, 0.5})));
  CHECK_FALSE(body->contains(vecd({1.1, 0, 0, 0})));
  CHECK(volume_exact(*body).value == doctest::Approx(2.0 * kPi * kPi));
}
