#include "saddlepep/games.hpp"

#include "saddlepep/interpolation.hpp"

#include <doctest.h>

#include <cmath>

using namespace pep;

TEST_CASE("scalar game formulas") {
  QuadraticGame g;
  g.P = Matrix::Constant(1, 1, 0.7);
  g.Q = Matrix::Constant(1, 1, 0.4);
  g.R = Matrix::Zero(1, 1);
  g.a = Vector::Zero(1);
  g.b = Vector::Zero(1);
  g.mu = 0.4;
  g.L = 0.7;
  const Vector x = Vector::Constant(1, 2.0);
  const Vector y = Vector::Constant(1, 3.0);
  CHECK(g.value(x, y) == doctest::Approx(0.5 * 0.7 * 4 - 0.5 * 0.4 * 9));
  CHECK(g.grad_x(x, y)[0] == doctest::Approx(1.4));
  CHECK(g.grad_y(x, y)[0] == doctest::Approx(-1.2));
}

TEST_CASE("random games satisfy their membership bounds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const QuadraticGame g = random_game(4, 3, 0.2, 1.0, seed);
    CHECK(g.operator_norm() <= 1.0 + 1e-10);
    CHECK(g.monotonicity_modulus() >= 0.2 - 1e-10);
  }
  CHECK_THROWS_AS(random_game(0, 1, 0.1, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_game(1, 1, 1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("near-degenerate games approach the quadratic saddle class") {
  const double L = 1.0;
  const double mu = L - 1e-8;
  const QuadraticGame g = random_game(2, 2, mu, L, 5);
  SampleSet set;
  set.d_x = set.d_y = 2;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 4; ++k) {
    Vector x(2), y(2);
    for (int i = 0; i < 2; ++i) {
      x[i] = gauss(rng);
      y[i] = gauss(rng);
    }
    set.samples.push_back(g.sample_at(x, y));
  }
  CHECK(check_interp_squad(set, mu, 1e-5).ok());
}

TEST_CASE("method trajectories") {
  QuadraticGame g;
  g.P = Matrix::Identity(1, 1);
  g.Q = Matrix::Identity(1, 1);
  g.R = Matrix::Zero(1, 1);
  g.a = Vector::Zero(1);
  g.b = Vector::Zero(1);
  g.mu = 1.0;
  g.L = 1.0;
  SUBCASE("one-step convergence of the unit quadratic at eta = 1") {
    const Trajectory t = run_method(g, {Method::SimGda, 1.0},
                                    Vector::Constant(1, 1.0),
                                    Vector::Constant(1, 1.0), 1);
    CHECK(std::abs(t.xs[1][0]) < 1e-15);
    CHECK(std::abs(t.ys[1][0]) < 1e-15);
  }
  SUBCASE("zero step size leaves the trajectory constant") {
    const Trajectory t = run_method(g, {Method::SimGda, 0.0},
                                    Vector::Constant(1, 1.0),
                                    Vector::Constant(1, -2.0), 3);
    for (const Vector& x : t.xs) CHECK(x[0] == 1.0);
    for (const Vector& y : t.ys) CHECK(y[0] == -2.0);
  }
  SUBCASE("Alt-GDA updates y with the fresh x gradient") {
    const QuadraticGame game = random_game(2, 2, 0.3, 1.0, 17);
    const double eta = 0.4;
    const Vector x0 = Vector::Constant(2, 1.0);
    const Vector y0 = Vector::Constant(2, -0.5);
    const Trajectory t = run_method(game, {Method::AltGda, eta}, x0, y0, 1);
    const Vector x1 = x0 - eta * game.grad_x(x0, y0);
    const Vector y1 = y0 + eta * game.grad_y(x1, y0);
    CHECK((t.xs[1] - x1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((t.ys[1] - y1).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("sampled inequality checks on verified games") {
  const QuadraticGame g = random_game(3, 2, 0.25, 1.0, 11);
  SUBCASE("full set holds on a thousand pairs") {
    CHECK(sample_check(g, ConstraintSetId::Full, 1000, 21, 1e-9).ok());
  }
  SUBCASE("cocoercive set holds on the transformed image") {
    CHECK(sample_check(g, ConstraintSetId::Cocoercive, 500, 22, 1e-9).ok());
  }
  SUBCASE("breaking Lipschitzness produces C1 violations") {
    QuadraticGame bad = g;
    bad.P *= 3.0;  // operator norm now exceeds the declared L
    const CheckReport r = sample_check(bad, ConstraintSetId::Full, 200, 23,
                                       1e-9);
    bool c1 = false;
    for (const Violation& v : r.violations)
      if (v.constraint == "C1") c1 = true;
    CHECK(c1);
  }
}

TEST_CASE("empirical soundness of certificates") {
  const double kappa = 10.0, eta = 0.1;
  const RateResult rate =
      min_rho({Method::SimGda, eta}, ConstraintSetId::Definition, kappa);
  REQUIRE(rate.certificate.has_value());
  SUBCASE("certified ratio bounds observed Lyapunov decrease") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const QuadraticGame g = random_game(3, 3, 1.0 / kappa, 1.0, seed);
      const SoundnessReport rep =
          empirical_vs_certified(g, {Method::SimGda, eta}, rate, 100, seed);
      CHECK(!rep.skipped);
      CHECK(rep.ok);
      CHECK(rep.max_ratio <= rate.rho * rate.rho + 1e-6);
    }
  }
  SUBCASE("rows without certificates are skipped") {
    const RateResult none =
        min_rho({Method::SimGda, 10.0}, ConstraintSetId::Definition, kappa);
    const QuadraticGame g = random_game(2, 2, 1.0 / kappa, 1.0, 3);
    const SoundnessReport rep =
        empirical_vs_certified(g, {Method::SimGda, 10.0}, none, 50, 3);
    CHECK(rep.skipped);
  }
}

TEST_CASE("worst-case alignment of scalar games") {
  // A scalar game with both curvatures at mu is the extremal instance for
  // Sim-GDA under the definition constraints; its observed contraction should
  // come close to the certified rate.
  const double kappa = 10.0, eta = 0.1;
  const RateResult rate =
      min_rho({Method::SimGda, eta}, ConstraintSetId::Definition, kappa);
  REQUIRE(rate.certificate.has_value());
  QuadraticGame g;
  const double mu = 1.0 / kappa;
  g.P = Matrix::Constant(1, 1, mu);
  g.Q = Matrix::Constant(1, 1, mu);
  g.R = Matrix::Constant(1, 1, std::sqrt(1.0 - mu * mu));
  g.a = Vector::Zero(1);
  g.b = Vector::Zero(1);
  g.mu = mu;
  g.L = 1.0;
  REQUIRE(g.operator_norm() <= 1.0 + 1e-12);
  const Trajectory t = run_method(g, {Method::SimGda, eta},
                                  Vector::Constant(1, 1.0),
                                  Vector::Constant(1, 1.0), 200);
  double worst = 0.0;
  for (double r : t.ratios) worst = std::max(worst, r);
  CHECK(worst <= rate.rho + 1e-9);
  CHECK(worst >= rate.rho * 0.95);
}
