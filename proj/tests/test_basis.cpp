#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tvar/basis.hpp"
#include "tvar/errors.hpp"
#include "tvar/rng.hpp"

using tvar::BasisKind;
using tvar::make_basis;

namespace {

// Independent oracle: explicit Legendre polynomials up to degree 4.
double legendre_poly(int j, double t) {
  switch (j) {
    case 0: return 1.0;
    case 1: return t;
    case 2: return 0.5 * (3.0 * t * t - 1.0);
    case 3: return 0.5 * (5.0 * t * t * t - 3.0 * t);
    case 4: return 0.125 * (35.0 * t * t * t * t - 30.0 * t * t + 3.0);
    default: return std::nan("");
  }
}

}  // namespace

TEST_CASE("constant column is first for every kind and order") {
  for (auto kind : {BasisKind::Legendre, BasisKind::Fourier}) {
    for (int q : {0, 1, 2, 5, 8}) {
      for (int n : {2, 3, 17, 100}) {
        auto b = make_basis(kind, q, n);
        REQUIRE(b.values.rows() == n);
        REQUIRE(b.values.cols() == q + 1);
        for (int i = 0; i < n; ++i) CHECK(b.values(i, 0) == 1.0);
      }
    }
  }
}

TEST_CASE("Legendre columns match explicit polynomials on the mapped grid") {
  const int n = 51;
  auto b = make_basis(BasisKind::Legendre, 4, n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * i / (n - 1) - 1.0;
    for (int j = 0; j <= 4; ++j) {
      CHECK(b.values(i, j) == doctest::Approx(legendre_poly(j, t)).epsilon(1e-12));
    }
  }
  // Endpoints map to exactly -1 and +1.
  CHECK(b.values(0, 1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(b.values(n - 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Legendre q=2 on three samples: quadratic column is (1, -0.5, 1)") {
  auto b = make_basis(BasisKind::Legendre, 2, 3);
  CHECK(b.values(0, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.values(1, 2) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(b.values(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  // Linear column is the mapped grid itself.
  CHECK(b.values(0, 1) == doctest::Approx(-1.0));
  CHECK(b.values(1, 1) == doctest::Approx(0.0));
  CHECK(b.values(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("Fourier columns are cos/sin pairs of the window frequency") {
  const int n = 8;
  auto b = make_basis(BasisKind::Fourier, 3, n);
  const double w = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    CHECK(b.values(i, 1) == doctest::Approx(std::cos(w * i)).epsilon(1e-14));
    CHECK(b.values(i, 2) == doctest::Approx(std::sin(w * i)).epsilon(1e-14));
    CHECK(b.values(i, 3) == doctest::Approx(std::cos(2 * w * i)).epsilon(1e-14));
  }
}

TEST_CASE("Fourier odd q ends on a cosine column") {
  const int n = 16;
  auto b5 = make_basis(BasisKind::Fourier, 5, n);
  const double w = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i) {
    CHECK(b5.values(i, 5) == doctest::Approx(std::cos(3 * w * i)).epsilon(1e-14));
    CHECK(b5.values(i, 4) == doctest::Approx(std::sin(2 * w * i)).epsilon(1e-14));
  }
}

TEST_CASE("sampled Legendre functions are nearly orthogonal on long windows") {
  const int n = 10000;
  auto b = make_basis(BasisKind::Legendre, 4, n);
  for (int i = 0; i <= 4; ++i) {
    for (int j = i + 1; j <= 4; ++j) {
      const double dot = b.values.col(i).dot(b.values.col(j));
      const double denom = b.values.col(i).norm() * b.values.col(j).norm();
      CHECK(std::abs(dot) / denom < 0.02);
    }
  }
}

TEST_CASE("trajectories: p=1 linear ramp from a two-function basis") {
  auto b = make_basis(BasisKind::Legendre, 1, 3);
  Eigen::VectorXd alpha(2);
  alpha << 0.5, 0.25;
  auto a = tvar::eval_trajectories(alpha, b, 1);
  REQUIRE(a.rows() == 3);
  REQUIRE(a.cols() == 1);
  CHECK(a(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a(1, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(a(2, 0) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("trajectories: q=0 reproduces constant coefficients") {
  auto b = make_basis(BasisKind::Fourier, 0, 20);
  Eigen::VectorXd alpha(3);
  alpha << 1.2, -0.5, 0.1;
  auto a = tvar::eval_trajectories(alpha, b, 3);
  for (int i = 0; i < 20; ++i)
    for (int c = 0; c < 3; ++c)
      CHECK(a(i, c) == doctest::Approx(alpha(c)).epsilon(1e-15));
}

TEST_CASE("trajectories are linear in the coefficient vector") {
  tvar::Rng rng(123);
  for (auto kind : {BasisKind::Legendre, BasisKind::Fourier}) {
    const int p = 3, q = 2, n = 40;
    auto b = make_basis(kind, q, n);
    Eigen::VectorXd u(p * (q + 1)), v(p * (q + 1));
    for (int i = 0; i < u.size(); ++i) {
      u(i) = rng.normal();
      v(i) = rng.normal();
    }
    Eigen::MatrixXd sum = tvar::eval_trajectories(u + v, b, p);
    // materialize: auto would keep an expression over dead temporaries
    Eigen::MatrixXd parts =
        tvar::eval_trajectories(u, b, p) + tvar::eval_trajectories(v, b, p);
    CHECK((sum - parts).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("trajectory evaluation matches a direct double loop") {
  tvar::Rng rng(99);
  const int p = 2, q = 3, n = 25;
  auto b = make_basis(BasisKind::Legendre, q, n);
  Eigen::VectorXd alpha(p * (q + 1));
  for (int i = 0; i < alpha.size(); ++i) alpha(i) = rng.normal();
  auto a = tvar::eval_trajectories(alpha, b, p);
  for (int i = 0; i < n; ++i) {
    for (int lag = 1; lag <= p; ++lag) {
      double want = 0.0;
      for (int j = 0; j <= q; ++j) want += alpha(j * p + lag - 1) * b.values(i, j);
      CHECK(a(i, lag - 1) == doctest::Approx(want).epsilon(1e-13));
    }
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(make_basis(BasisKind::Legendre, -1, 10),
                  tvar::InvalidArgumentError);
  CHECK_THROWS_AS(make_basis(BasisKind::Legendre, 2, 1),
                  tvar::InvalidArgumentError);
  CHECK_THROWS_AS(make_basis(BasisKind::Fourier, 2, 0),
                  tvar::InvalidArgumentError);

  auto b = make_basis(BasisKind::Legendre, 1, 10);
  Eigen::VectorXd alpha(3);  // not divisible into p blocks of q+1
  alpha.setZero();
  CHECK_THROWS_AS(tvar::eval_trajectories(alpha, b, 2),
                  tvar::DimensionMismatchError);
}
