#pragma once

#include "saddlepep/certify.hpp"
#include "saddlepep/constraints.hpp"

#include <cstdint>
#include <vector>

namespace pep {

/// Concrete member of SmoothScsc(mu, L):
///   f(x,y) = 1/2 x'Px - 1/2 y'Qy + x'Ry + <a,x> + <b,y>
/// with eig(P), eig(Q) in [mu, L] and the saddle operator's Jacobian
/// [[P, R], [-R', Q]] of spectral norm at most L (its symmetric part is
/// blkdiag(P, Q), so strong monotonicity holds with modulus min eig).
struct QuadraticGame {
  Matrix P;
  Matrix Q;
  Matrix R;
  Vector a;
  Vector b;
  double mu = 0.0;
  double L = 0.0;

  int dx() const { return static_cast<int>(P.rows()); }
  int dy() const { return static_cast<int>(Q.rows()); }

  double value(const Vector& x, const Vector& y) const;
  Vector grad_x(const Vector& x, const Vector& y) const;
  Vector grad_y(const Vector& x, const Vector& y) const;
  SaddleSample sample_at(const Vector& x, const Vector& y) const;

  /// Unique saddle point, from the linear optimality system.
  void saddle(Vector& x_star, Vector& y_star) const;

  /// Post-hoc membership checks (Jacobian norm, monotonicity modulus).
  double operator_norm() const;
  double monotonicity_modulus() const;
};

/// Deterministic-per-seed generator; the returned game always passes the
/// membership checks (throws after bounded rescale retries otherwise).
QuadraticGame random_game(int d_x, int d_y, double mu, double L,
                          std::uint64_t seed);

struct Trajectory {
  std::vector<Vector> xs;
  std::vector<Vector> ys;
  Vector x_star;
  Vector y_star;
  /// ||z_{k+1} - z*|| / ||z_k - z*|| for Sim-GDA; for Alt-GDA the ratio of
  /// the 3-component Lyapunov state norms (coordinates and both gradients).
  std::vector<double> ratios;
};

Trajectory run_method(const QuadraticGame& game, const MethodSpec& spec,
                      const Vector& x0, const Vector& y0, int iters);

/// Draws n_pairs random point pairs from the game and checks the selected
/// pointwise inequality family on them. For the Cocoercive set the samples
/// are pushed through the smooth->cocoercive transform first.
CheckReport sample_check(const QuadraticGame& game, ConstraintSetId set_id,
                         int n_pairs, std::uint64_t seed,
                         double tol = kDefaultCheckTol);

/// Empirical soundness of one certificate: along a trajectory of a matched
/// game, the certified Lyapunov function must contract at rate rho^2 (up to
/// slack 1e-6 V_0 per step).
struct SoundnessReport {
  bool skipped = false;    // no certificate (rho = 1 row)
  bool ok = false;
  double max_excess = 0.0;     // max over steps of V_{k+1} - rho^2 V_k - slack V_0
  double max_ratio = 0.0;      // max over steps of V_{k+1} / V_k with V_k > 0
  double certified_rho2 = 1.0;
};

SoundnessReport empirical_vs_certified(const QuadraticGame& game,
                                       const MethodSpec& spec,
                                       const RateResult& rate, int iters,
                                       std::uint64_t seed);

}  // namespace pep
