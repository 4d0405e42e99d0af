#include "saddlepep/interpolation.hpp"

#include <cmath>
#include <stdexcept>

namespace pep {

namespace {

bool finite(const Vector& v) { return v.allFinite(); }

// Signed residual with the largest magnitude, for vector equalities.
double worst_component(const Vector& r) {
  double w = 0.0;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    if (std::abs(r[k]) > std::abs(w)) w = r[k];
  }
  return w;
}

}  // namespace

void SampleSet::validate() const {
  if (samples.empty()) throw std::invalid_argument("SampleSet: empty set");
  if (d_x <= 0 || d_y <= 0)
    throw std::invalid_argument("SampleSet: dimensions must be positive");
  for (const SaddleSample& s : samples) {
    if (s.x.size() != d_x || s.gx.size() != d_x || s.y.size() != d_y ||
        s.gy.size() != d_y)
      throw std::invalid_argument("SampleSet: sample dimension mismatch");
    if (!finite(s.x) || !finite(s.y) || !finite(s.gx) || !finite(s.gy) ||
        !std::isfinite(s.f))
      throw std::invalid_argument("SampleSet: non-finite entry");
  }
}

ClassSpec ClassSpec::convex_concave() {
  return {ClassVariant::ConvexConcave, 0.0,
          std::numeric_limits<double>::infinity()};
}
ClassSpec ClassSpec::scsc(double mu) {
  ClassSpec s{ClassVariant::Scsc, mu, std::numeric_limits<double>::infinity()};
  s.validate();
  return s;
}
ClassSpec ClassSpec::smooth_scsc(double mu, double L) {
  ClassSpec s{ClassVariant::SmoothScsc, mu, L};
  s.validate();
  return s;
}
ClassSpec ClassSpec::cocoercive_scsc(double mu, double L) {
  ClassSpec s{ClassVariant::CocoerciveScsc, mu, L};
  s.validate();
  return s;
}
ClassSpec ClassSpec::quadratic_saddle(double mu) {
  ClassSpec s{ClassVariant::QuadraticSaddle, mu, mu};
  s.validate();
  return s;
}

void ClassSpec::validate() const {
  switch (variant) {
    case ClassVariant::ConvexConcave:
      break;
    case ClassVariant::Scsc:
      if (!(mu > 0)) throw std::invalid_argument("ClassSpec: mu must be > 0");
      break;
    case ClassVariant::SmoothScsc:
    case ClassVariant::CocoerciveScsc:
      if (!(mu > 0)) throw std::invalid_argument("ClassSpec: mu must be > 0");
      if (!(mu < L)) throw std::invalid_argument("ClassSpec: need mu < L");
      break;
    case ClassVariant::QuadraticSaddle:
      if (!(mu > 0)) throw std::invalid_argument("ClassSpec: mu must be > 0");
      if (mu != L) throw std::invalid_argument("ClassSpec: quadratic saddle has mu = L");
      break;
  }
}

double QuadraticSaddleFn::value(const Vector& x, const Vector& y) const {
  return 0.5 * mu * x.squaredNorm() - 0.5 * mu * y.squaredNorm() +
         a.dot(x) + b.dot(y) + c;
}
Vector QuadraticSaddleFn::grad_x(const Vector& x) const { return mu * x + a; }
Vector QuadraticSaddleFn::grad_y(const Vector& y) const { return -mu * y + b; }

SaddleSample QuadraticSaddleFn::sample_at(const Vector& x,
                                          const Vector& y) const {
  return {x, y, grad_x(x), grad_y(y), value(x, y)};
}

CheckReport check_interp_s(const SampleSet& set, double tol) {
  set.validate();
  CheckReport report;
  const auto& s = set.samples;
  const int n = set.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double slack = s[i].f - s[j].f - s[j].gx.dot(s[i].x - s[j].x) -
                           s[i].gy.dot(s[i].y - s[j].y);
      if (slack < -tol) report.violations.push_back({i, j, "S", slack});
    }
  }
  return report;
}

CheckReport check_interp_smu(const SampleSet& set, double mu, double tol) {
  set.validate();
  if (!(mu > 0)) throw std::invalid_argument("check_interp_smu: mu must be > 0");
  CheckReport report;
  const auto& s = set.samples;
  const int n = set.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double slack = s[i].f - s[j].f - s[j].gx.dot(s[i].x - s[j].x) -
                           s[i].gy.dot(s[i].y - s[j].y) -
                           0.5 * mu * (s[i].x - s[j].x).squaredNorm() -
                           0.5 * mu * (s[i].y - s[j].y).squaredNorm();
      if (slack < -tol) report.violations.push_back({i, j, "Smu", slack});
    }
  }
  return report;
}

CheckReport check_interp_fmumu(const std::vector<GradientSample>& points,
                               double mu, double tol) {
  if (!(mu > 0))
    throw std::invalid_argument("check_interp_fmumu: mu must be > 0");
  if (points.empty())
    throw std::invalid_argument("check_interp_fmumu: empty point list");
  const Eigen::Index d = points.front().x.size();
  for (const GradientSample& p : points) {
    if (p.x.size() != d || p.g.size() != d)
      throw std::invalid_argument("check_interp_fmumu: dimension mismatch");
  }
  CheckReport report;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& pi = points[i];
      const auto& pj = points[j];
      const double val =
          pi.f - pj.f - 0.5 * (pi.g + pj.g).dot(pi.x - pj.x);
      if (std::abs(val) > tol)
        report.violations.push_back({i, j, "Fmm:value", val});
      const double grad = worst_component(pi.g - pj.g - mu * (pi.x - pj.x));
      if (std::abs(grad) > tol)
        report.violations.push_back({i, j, "Fmm:grad", grad});
    }
  }
  return report;
}

CheckReport check_interp_squad(const SampleSet& set, double mu, double tol) {
  set.validate();
  if (!(mu > 0))
    throw std::invalid_argument("check_interp_squad: mu must be > 0");
  CheckReport report;
  const auto& s = set.samples;
  const int n = set.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double val = s[i].f - s[j].f -
                         0.5 * (s[i].gx + s[j].gx).dot(s[i].x - s[j].x) -
                         0.5 * (s[i].gy + s[j].gy).dot(s[i].y - s[j].y);
      if (std::abs(val) > tol)
        report.violations.push_back({i, j, "Squad:value", val});
      const double gx =
          worst_component(s[i].gx - s[j].gx - mu * (s[i].x - s[j].x));
      if (std::abs(gx) > tol)
        report.violations.push_back({i, j, "Squad:gradx", gx});
      const double gy =
          worst_component(s[i].gy - s[j].gy + mu * (s[i].y - s[j].y));
      if (std::abs(gy) > tol)
        report.violations.push_back({i, j, "Squad:grady", gy});
    }
  }
  return report;
}

QuadraticSaddleFn build_quadratic_interpolant(const SampleSet& set, double mu,
                                              double tol) {
  const CheckReport check = check_interp_squad(set, mu, tol);
  if (!check.ok()) {
    const Violation& v = check.violations.front();
    throw std::invalid_argument(
        "build_quadratic_interpolant: set is not quadratic-saddle "
        "interpolable, first violated pair (" +
        std::to_string(v.i) + ", " + std::to_string(v.j) + ") on " +
        v.constraint);
  }
  const SaddleSample& s0 = set.samples.front();
  QuadraticSaddleFn fn;
  fn.mu = mu;
  fn.a = s0.gx - mu * s0.x;
  fn.b = s0.gy + mu * s0.y;
  fn.c = 0.0;
  fn.c = s0.f - fn.value(s0.x, s0.y);
  return fn;
}

SampleSet shift_regularization(const SampleSet& set, double mu,
                               ShiftDirection direction) {
  set.validate();
  if (!(mu > 0))
    throw std::invalid_argument("shift_regularization: mu must be > 0");
  const double sign = direction == ShiftDirection::Remove ? 1.0 : -1.0;
  SampleSet out = set;
  for (SaddleSample& s : out.samples) {
    s.gx -= sign * mu * s.x;
    s.gy += sign * mu * s.y;
    s.f += sign * (-0.5 * mu * s.x.squaredNorm() + 0.5 * mu * s.y.squaredNorm());
  }
  return out;
}

std::pair<SampleSet, ClassSpec> cocoercive_smooth_transform(
    const SampleSet& set, const ClassSpec& spec, TransformDirection direction) {
  set.validate();
  spec.validate();
  SampleSet out = set;
  if (direction == TransformDirection::ToSmooth) {
    if (spec.variant != ClassVariant::CocoerciveScsc)
      throw std::invalid_argument(
          "cocoercive_smooth_transform: ToSmooth expects a CocoerciveScsc spec");
    const double L = 0.5 * spec.L;       // smooth Lipschitz constant
    const double mu = spec.mu - L;       // smooth strong monotonicity
    if (!(mu > 0))
      throw std::invalid_argument(
          "cocoercive_smooth_transform: need mu > Lambda/2 for the smooth image");
    for (SaddleSample& s : out.samples) {
      s.gx -= L * s.x;
      s.gy += L * s.y;
      s.f += -0.5 * L * s.x.squaredNorm() + 0.5 * L * s.y.squaredNorm();
    }
    return {std::move(out), ClassSpec::smooth_scsc(mu, L)};
  }
  if (spec.variant != ClassVariant::SmoothScsc)
    throw std::invalid_argument(
        "cocoercive_smooth_transform: ToCocoercive expects a SmoothScsc spec");
  const double L = spec.L;
  for (SaddleSample& s : out.samples) {
    s.gx += L * s.x;
    s.gy -= L * s.y;
    s.f += 0.5 * L * s.x.squaredNorm() - 0.5 * L * s.y.squaredNorm();
  }
  return {std::move(out), ClassSpec::cocoercive_scsc(spec.mu + L, 2.0 * L)};
}

}  // namespace pep
