#include "saddlepep/games.hpp"

#include "saddlepep/interpolation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <stdexcept>

namespace pep {

namespace {

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(n, n);
}

Matrix random_spd_with_spectrum(int n, double lo, double hi,
                                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Vector eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = unif(rng);
  const Matrix u = random_orthogonal(n, rng);
  return u * eigs.asDiagonal() * u.transpose();
}

Matrix jacobian(const QuadraticGame& g) {
  const int dx = g.dx();
  const int dy = g.dy();
  Matrix j(dx + dy, dx + dy);
  j.topLeftCorner(dx, dx) = g.P;
  j.topRightCorner(dx, dy) = g.R;
  j.bottomLeftCorner(dy, dx) = -g.R.transpose();
  j.bottomRightCorner(dy, dy) = g.Q;
  return j;
}

Vector alt_state(const QuadraticGame& game, double eta, const Vector& x,
                 const Vector& y, const Vector& x_star, const Vector& y_star,
                 bool x_side) {
  const Vector x_next = x - eta * game.grad_x(x, y);
  if (x_side) {
    Vector s(3 * game.dx());
    s << x - x_star, game.grad_x(x, y), game.grad_x(x_next, y);
    return s;
  }
  Vector s(3 * game.dy());
  s << y - y_star, game.grad_y(x, y), game.grad_y(x_next, y);
  return s;
}

}  // namespace

double QuadraticGame::value(const Vector& x, const Vector& y) const {
  return 0.5 * x.dot(P * x) - 0.5 * y.dot(Q * y) + x.dot(R * y) + a.dot(x) +
         b.dot(y);
}
Vector QuadraticGame::grad_x(const Vector& x, const Vector& y) const {
  return P * x + R * y + a;
}
Vector QuadraticGame::grad_y(const Vector& x, const Vector& y) const {
  return -Q * y + R.transpose() * x + b;
}
SaddleSample QuadraticGame::sample_at(const Vector& x, const Vector& y) const {
  return {x, y, grad_x(x, y), grad_y(x, y), value(x, y)};
}

void QuadraticGame::saddle(Vector& x_star, Vector& y_star) const {
  const int dxn = dx();
  const int dyn = dy();
  Matrix j = jacobian(*this);
  Vector q(dxn + dyn);
  q << a, -b;
  Eigen::PartialPivLU<Matrix> lu(j);
  const Vector z = lu.solve(-q);
  if (!z.allFinite())
    throw std::runtime_error("QuadraticGame: singular optimality system");
  x_star = z.head(dxn);
  y_star = z.tail(dyn);
}

double QuadraticGame::operator_norm() const {
  Eigen::JacobiSVD<Matrix> svd(jacobian(*this));
  return svd.singularValues().maxCoeff();
}

double QuadraticGame::monotonicity_modulus() const {
  const Matrix j = jacobian(*this);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (j + j.transpose()),
                                            Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

QuadraticGame random_game(int d_x, int d_y, double mu, double L,
                          std::uint64_t seed) {
  if (d_x < 1 || d_y < 1)
    throw std::invalid_argument("random_game: dimensions must be positive");
  if (!(mu > 0.0 && mu < L))
    throw std::invalid_argument("random_game: need 0 < mu < L");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;

  QuadraticGame g;
  g.mu = mu;
  g.L = L;
  // Block spectra stay inside [mu, mu + 0.9 (L - mu)]; the coupling R is
  // rescaled until the full Jacobian norm fits under L.
  const double hi = mu + 0.9 * (L - mu);
  g.P = random_spd_with_spectrum(d_x, mu, hi, rng);
  g.Q = random_spd_with_spectrum(d_y, mu, hi, rng);
  g.R.resize(d_x, d_y);
  for (int r = 0; r < d_x; ++r)
    for (int c = 0; c < d_y; ++c) g.R(r, c) = gauss(rng) * 0.3 * (L - mu);
  g.a.resize(d_x);
  g.b.resize(d_y);
  for (int i = 0; i < d_x; ++i) g.a[i] = gauss(rng);
  for (int i = 0; i < d_y; ++i) g.b[i] = gauss(rng);

  for (int attempt = 0; attempt < 64; ++attempt) {
    if (g.operator_norm() <= L) break;
    g.R *= 0.7;
    if (attempt == 63)
      throw std::runtime_error("random_game: rescaling failed to fit L");
  }
  if (g.monotonicity_modulus() < mu - 1e-10 || g.operator_norm() > L + 1e-10)
    throw std::runtime_error("random_game: post-hoc membership check failed");
  return g;
}

Trajectory run_method(const QuadraticGame& game, const MethodSpec& spec,
                      const Vector& x0, const Vector& y0, int iters) {
  if (iters < 1) throw std::invalid_argument("run_method: iters must be >= 1");
  Trajectory t;
  game.saddle(t.x_star, t.y_star);
  t.xs.push_back(x0);
  t.ys.push_back(y0);
  const double eta = spec.eta;
  Vector x = x0, y = y0;
  for (int k = 0; k < iters; ++k) {
    Vector x_next = x - eta * game.grad_x(x, y);
    Vector y_next = spec.method == Method::SimGda
                        ? (y + eta * game.grad_y(x, y)).eval()
                        : (y + eta * game.grad_y(x_next, y)).eval();
    double num, den;
    if (spec.method == Method::SimGda) {
      num = std::hypot((x_next - t.x_star).norm(), (y_next - t.y_star).norm());
      den = std::hypot((x - t.x_star).norm(), (y - t.y_star).norm());
    } else {
      const Vector sx0 = alt_state(game, eta, x, y, t.x_star, t.y_star, true);
      const Vector sy0 = alt_state(game, eta, x, y, t.x_star, t.y_star, false);
      const Vector sx1 =
          alt_state(game, eta, x_next, y_next, t.x_star, t.y_star, true);
      const Vector sy1 =
          alt_state(game, eta, x_next, y_next, t.x_star, t.y_star, false);
      num = std::hypot(sx1.norm(), sy1.norm());
      den = std::hypot(sx0.norm(), sy0.norm());
    }
    t.ratios.push_back(den > 0.0 ? num / den : 0.0);
    x = std::move(x_next);
    y = std::move(y_next);
    t.xs.push_back(x);
    t.ys.push_back(y);
  }
  return t;
}

CheckReport sample_check(const QuadraticGame& game, ConstraintSetId set_id,
                         int n_pairs, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_point = [&](int d) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = 3.0 * gauss(rng);
    return v;
  };
  CheckReport report;
  for (int k = 0; k < n_pairs; ++k) {
    SampleSet set;
    set.d_x = game.dx();
    set.d_y = game.dy();
    set.samples.push_back(
        game.sample_at(random_point(set.d_x), random_point(set.d_y)));
    set.samples.push_back(
        game.sample_at(random_point(set.d_x), random_point(set.d_y)));
    double mu = game.mu;
    double L = game.L;
    if (set_id == ConstraintSetId::Cocoercive) {
      auto [cc, cc_spec] = cocoercive_smooth_transform(
          set, ClassSpec::smooth_scsc(game.mu, game.L),
          TransformDirection::ToCocoercive);
      set = std::move(cc);
      mu = cc_spec.mu;
      L = cc_spec.L;
    }
    CheckReport one = check_pointwise(set_id, set, mu, L, tol);
    for (Violation& v : one.violations) {
      v.i = 2 * k + v.i;  // report indices into the pair stream
      v.j = 2 * k + v.j;
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

SoundnessReport empirical_vs_certified(const QuadraticGame& game,
                                       const MethodSpec& spec,
                                       const RateResult& rate, int iters,
                                       std::uint64_t seed) {
  SoundnessReport rep;
  if (!rate.certificate.has_value()) {
    rep.skipped = true;
    return rep;
  }
  const Certificate& cert = *rate.certificate;
  rep.certified_rho2 = cert.rho2;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Vector x0(game.dx()), y0(game.dy());
  Vector xs, ys;
  game.saddle(xs, ys);
  for (int i = 0; i < game.dx(); ++i) x0[i] = xs[i] + 2.0 * gauss(rng);
  for (int i = 0; i < game.dy(); ++i) y0[i] = ys[i] + 2.0 * gauss(rng);

  const Trajectory traj = run_method(game, spec, x0, y0, iters);
  auto lyapunov = [&](const Vector& x, const Vector& y) {
    Vector sx, sy;
    if (spec.method == Method::SimGda) {
      sx.resize(2 * game.dx());
      sy.resize(2 * game.dy());
      sx << x - traj.x_star, game.grad_x(x, y);
      sy << y - traj.y_star, game.grad_y(x, y);
    } else {
      const Vector x_next = x - spec.eta * game.grad_x(x, y);
      sx.resize(3 * game.dx());
      sy.resize(3 * game.dy());
      sx << x - traj.x_star, game.grad_x(x, y), game.grad_x(x_next, y);
      sy << y - traj.y_star, game.grad_y(x, y), game.grad_y(x_next, y);
    }
    // Block form of s' (P (x) I) s over stacked coordinate segments.
    const int p = static_cast<int>(cert.Px.rows());
    double vx = 0.0, vy = 0.0;
    const int dx = game.dx(), dy = game.dy();
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) {
        vx += cert.Px(r, c) * sx.segment(r * dx, dx).dot(sx.segment(c * dx, dx));
        vy += cert.Py(r, c) * sy.segment(r * dy, dy).dot(sy.segment(c * dy, dy));
      }
    return vx + vy;
  };

  std::vector<double> v;
  for (size_t k = 0; k < traj.xs.size(); ++k)
    v.push_back(lyapunov(traj.xs[k], traj.ys[k]));
  const double slack = 1e-6 * std::max(v[0], 0.0);
  rep.ok = true;
  for (size_t k = 0; k + 1 < v.size(); ++k) {
    const double excess = v[k + 1] - cert.rho2 * v[k] - slack;
    rep.max_excess = std::max(rep.max_excess, excess);
    if (excess > 0.0) rep.ok = false;
    if (v[k] > 1e-300) rep.max_ratio = std::max(rep.max_ratio, v[k + 1] / v[k]);
  }
  return rep;
}

}  // namespace pep
