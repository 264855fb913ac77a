#include <doctest.h>

#include <numbers>
#include <random>

#include "cochord/frame.hpp"

using namespace cochord;

namespace {
constexpr double kPi = std::numbers::pi;

Vec vec4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}
}  // namespace

TEST_CASE("J maps (q,p) to (-p,q)") {
  Vec v(2);
  v << 1.0, 0.0;
  const Vec jv = apply_J(v);
  CHECK(jv(0) == doctest::Approx(0.0));
  CHECK(jv(1) == doctest::Approx(1.0));
}

TEST_CASE("J squared is minus the identity") {
  const Vec v = vec4(3, -2, 5, 7);
  CHECK((apply_J(apply_J(v)) + v).norm() == doctest::Approx(0.0));
}

TEST_CASE("J preserves the inner product and induces an antisymmetric form") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Vec u(6), v(6);
    for (int i = 0; i < 6; ++i) {
      u(i) = g(rng);
      v(i) = g(rng);
    }
    CHECK(apply_J(u).dot(apply_J(v)) == doctest::Approx(u.dot(v)));
    const double omega_uv = apply_J(u).dot(v);
    const double omega_vu = apply_J(v).dot(u);
    CHECK(omega_uv == doctest::Approx(-omega_vu));
  }
  const Vec u = vec4(1, 0, 0, 0), w = vec4(0, 0, 1, 0);
  CHECK(apply_J(u).dot(apply_J(w)) == doctest::Approx(0.0));
}

TEST_CASE("frame dimensions") {
  const Frame f(3, 1);
  CHECK(f.coiso_dim() == 4);
  CHECK(f.leaf_dim() == 2);
  CHECK(f.v1_dim() == 2);
  CHECK_THROWS_AS(Frame(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(Frame(0, 0), std::invalid_argument);
}

TEST_CASE("coordinate projections") {
  const Frame f(2, 1);
  const Vec v = vec4(1, 2, 3, 4);
  CHECK((project(f, Subspace::Rnk, v) - vec4(1, 2, 3, 0)).norm() ==
        doctest::Approx(0.0));
  CHECK((project(f, Subspace::V0, v) - vec4(0, 2, 0, 0)).norm() ==
        doctest::Approx(0.0));
  CHECK((project(f, Subspace::V1, v) - vec4(1, 0, 3, 0)).norm() ==
        doctest::Approx(0.0));
  CHECK((project(f, Subspace::JV0, v) - vec4(0, 0, 0, 4)).norm() ==
        doctest::Approx(0.0));

  const Frame lag(2, 0);
  CHECK(project(lag, Subspace::V1, v).norm() == doctest::Approx(0.0));
}

TEST_CASE("projections are idempotent, orthogonal, and sum to the identity") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      const Frame f(n, k);
      for (int trial = 0; trial < 20; ++trial) {
        Vec v(2 * n), w(2 * n);
        for (int i = 0; i < 2 * n; ++i) {
          v(i) = g(rng);
          w(i) = g(rng);
        }
        for (Subspace s : {Subspace::Rnk, Subspace::V0, Subspace::V1,
                           Subspace::JV0}) {
          const Vec pv = project(f, s, v);
          CHECK((project(f, s, pv) - pv).norm() < 1e-14);
        }
        CHECK(project(f, Subspace::Rnk, v)
                  .dot(project(f, Subspace::JV0, w)) == doctest::Approx(0.0));
        const Vec sum = project(f, Subspace::V1, v) +
                        project(f, Subspace::V0, v) +
                        project(f, Subspace::JV0, v);
        CHECK((sum - v).norm() < 1e-14);
      }
    }
}

TEST_CASE("leaf equivalence") {
  const Frame f(2, 1);
  CHECK(leaf_equivalent(f, vec4(1, 2, 3, 0), vec4(1, 5, 3, 0)));
  CHECK_FALSE(leaf_equivalent(f, vec4(1, 2, 3, 0), vec4(2, 2, 3, 0)));
  CHECK_THROWS_AS(leaf_equivalent(f, vec4(1, 2, 3, 1), vec4(1, 2, 3, 0)),
                  std::invalid_argument);

  const Frame periodic(2, 2);
  CHECK(leaf_equivalent(periodic, vec4(1, 2, 3, 4), vec4(1, 2, 3, 4)));
  CHECK_FALSE(leaf_equivalent(periodic, vec4(1, 2, 3, 4), vec4(1, 2, 3, 5)));
}

namespace {

Mat circle_path(int N, double t0, double t1) {
  Mat X(2, N + 1);
  for (int j = 0; j <= N; ++j) {
    const double t = t0 + (t1 - t0) * j / N;
    X(0, j) = std::cos(t);
    X(1, j) = std::sin(t);
  }
  return X;
}

}  // namespace

TEST_CASE("action of the unit circle is the enclosed area") {
  const int N = 10000;
  CHECK(action(circle_path(N, 0.0, 2.0 * kPi)) ==
        doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("action of a constant path vanishes") {
  Mat X = Mat::Ones(4, 33);
  CHECK(action(X) == doctest::Approx(0.0));
}

TEST_CASE("action of the upper semicircle") {
  // Oracle value frozen from quadrature of (1/2) Int <-J xdot, x> over the
  // semicircle: the integrand is identically 1 on [0, pi], giving pi / 2.
  const int N = 10000;
  CHECK(action(circle_path(N, 0.0, kPi)) ==
        doctest::Approx(kPi / 2).epsilon(1e-6));
}

TEST_CASE("action is 2-homogeneous to machine precision") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Mat X(4, 65);
  for (int j = 0; j < 65; ++j)
    for (int i = 0; i < 4; ++i) X(i, j) = g(rng);
  const double a = action(X);
  const double a2 = action(Mat(3.0 * X));
  CHECK(a2 == doctest::Approx(9.0 * a).epsilon(1e-14));
}

TEST_CASE("action is invariant under frame-subspace translations of "
          "constrained paths") {
  // Random paths satisfying the endpoint conditions: endpoints on the frame
  // subspace with difference along the leaf directions.
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  const Frame f(2, 1);
  const int N = 40;
  for (int trial = 0; trial < 20; ++trial) {
    Mat X(4, N + 1);
    for (int j = 0; j <= N; ++j)
      for (int i = 0; i < 4; ++i) X(i, j) = g(rng);
    X(3, 0) = 0.0;
    X(3, N) = 0.0;            // endpoints on the frame
    X(0, N) = X(0, 0);        // V1-block periodic
    X(2, N) = X(2, 0);
    Vec shift = Vec::Zero(4);
    shift(0) = g(rng);
    shift(1) = g(rng);
    shift(2) = g(rng);        // arbitrary frame vector
    Mat Y = X;
    Y.colwise() += shift;
    CHECK(std::abs(action(Y) - action(X)) < 1e-10 * (1.0 + std::abs(action(X))));
  }
}
