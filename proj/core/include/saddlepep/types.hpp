#pragma once

#include <Eigen/Core>

#include <limits>
#include <string>
#include <vector>

namespace pep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One saddle-function datum: a base point (x, y), the partial gradients
/// gx = ∇_x f and gy = ∇_y f taken there, and the function value f.
struct SaddleSample {
  Vector x;
  Vector y;
  Vector gx;
  Vector gy;
  double f = 0.0;
};

/// Ordered, non-empty list of samples sharing dimensions (d_x, d_y).
struct SampleSet {
  int d_x = 0;
  int d_y = 0;
  std::vector<SaddleSample> samples;

  int size() const { return static_cast<int>(samples.size()); }

  /// Throws std::invalid_argument on empty set, dimension mismatch or
  /// non-finite entries.
  void validate() const;
};

enum class ClassVariant {
  ConvexConcave,   // convex in x, concave in y
  Scsc,            // mu-strongly-convex-strongly-concave
  SmoothScsc,      // mu-SCSC with L-Lipschitz saddle operator
  CocoerciveScsc,  // mu-SCSC with 1/L-cocoercive saddle operator
  QuadraticSaddle, // mu/2 ||x||^2 - mu/2 ||y||^2 + linear
};

/// Function-class descriptor (variant, mu, L).
struct ClassSpec {
  ClassVariant variant = ClassVariant::ConvexConcave;
  double mu = 0.0;
  double L = std::numeric_limits<double>::infinity();

  static ClassSpec convex_concave();
  static ClassSpec scsc(double mu);
  static ClassSpec smooth_scsc(double mu, double L);
  static ClassSpec cocoercive_scsc(double mu, double L);
  static ClassSpec quadratic_saddle(double mu);

  /// Enforces the per-variant parameter constraints (0 < mu < L where both
  /// are meaningful, mu = L for the quadratic saddle class).
  void validate() const;
};

/// f(x,y) = mu/2 ||x||^2 - mu/2 ||y||^2 + <a,x> + <b,y> + c.
struct QuadraticSaddleFn {
  double mu = 1.0;
  Vector a;
  Vector b;
  double c = 0.0;

  double value(const Vector& x, const Vector& y) const;
  Vector grad_x(const Vector& x) const;  // mu x + a
  Vector grad_y(const Vector& y) const;  // -mu y + b
  SaddleSample sample_at(const Vector& x, const Vector& y) const;
};

/// A single failed pairwise condition: ordered pair (i, j), the condition's
/// identifier and the signed slack (negative for violated inequalities, the
/// signed residual for violated equalities).
struct Violation {
  int i = 0;
  int j = 0;
  std::string constraint;
  double slack = 0.0;
};

struct CheckReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Default absolute tolerance for finite-point checks.
inline constexpr double kDefaultCheckTol = 1e-8;

}  // namespace pep
