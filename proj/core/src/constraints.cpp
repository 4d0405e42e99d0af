#include "saddlepep/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace pep {

namespace {

using Eigen::Matrix4d;

Matrix4d c1_block() {
  Matrix4d m;
  m << 1, -1, -1, -1,
      -1,  1,  1,  1,
      -1,  1, -1,  1,
      -1,  1,  1, -1;
  return 0.25 * m;
}

Matrix4d c2_x(double m) {
  Matrix4d a;
  a << -m,  m, 0, -1,
        m, -m, 0,  1,
        0,  0, 0,  0,
       -1,  1, 0,  0;
  return 0.5 * a;
}

Matrix4d c2_y(double m) {
  Matrix4d b;
  b << -m,  m, -1, 0,
        m, -m,  1, 0,
       -1,  1,  0, 0,
        0,  0,  0, 0;
  return 0.5 * b;
}

Matrix4d c3_x(double m) {
  Matrix4d a;
  a << -m,  m,  m, -1,
        m, -m, -m,  1,
        m, -m, -1,  1,
       -1,  1,  1, -1;
  return a / (2.0 * (1.0 - m));
}

Matrix4d c3_y() {
  Matrix4d b;
  b <<  1, -1, -1, 0,
       -1,  1,  1, 0,
       -1,  1,  0, 0,
        0,  0,  0, 0;
  return 0.5 * b;
}

Matrix4d c4_x() {
  Matrix4d a;
  a <<  1, -1, 0, -1,
       -1,  1, 0,  1,
        0,  0, 0,  0,
       -1,  1, 0,  0;
  return 0.5 * a;
}

Matrix4d c4_y(double m) {
  Matrix4d b;
  b << -m,  m, -1,  m,
        m, -m,  1, -m,
       -1,  1, -1,  1,
        m, -m,  1, -1;
  return b / (2.0 * (1.0 - m));
}

std::vector<ConstraintKernel> full_kernels(double m) {
  return {
      {ConstraintId::C1, c1_block(), c1_block()},
      {ConstraintId::C2, c2_x(m), c2_y(m)},
      {ConstraintId::C3, c3_x(m), c3_y()},
      {ConstraintId::C4, c4_x(), c4_y(m)},
  };
}

// Congruence substitution of Theorem-5 type, at L = 1: evaluating the
// transformed kernel on cocoercive samples equals evaluating the original on
// their smooth image (gx -> gx - x, gy -> gy + y, f -> f - |x|^2/2 + |y|^2/2).
// The f-shift is Gram-representable and lands on the point-diagonal entries.
ConstraintKernel to_cocoercive(const ConstraintKernel& k) {
  Matrix4d tx = Matrix4d::Identity();
  tx(2, 0) = -1.0;
  tx(3, 1) = -1.0;
  Matrix4d ty = Matrix4d::Identity();
  ty(2, 0) = 1.0;
  ty(3, 1) = 1.0;
  Matrix4d shift = Matrix4d::Zero();
  shift(0, 0) = 1.0;
  shift(1, 1) = -1.0;
  ConstraintKernel out;
  out.id = k.id;
  out.A = tx.transpose() * k.A * tx - 0.5 * shift;
  out.B = ty.transpose() * k.B * ty + 0.5 * shift;
  return out;
}

double quad_form(const Eigen::Matrix4d& M, const Vector& pi, const Vector& pj,
                 const Vector& gi, const Vector& gj) {
  const Vector* v[4] = {&pi, &pj, &gi, &gj};
  double q = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (M(r, c) != 0.0) q += M(r, c) * v[r]->dot(*v[c]);
    }
  }
  return q;
}

// Cross-gradient gap d(z_i, z_j) = f_i - f_j - <gx_j, x_i-x_j> - <gy_i, y_i-y_j>.
double cross_gap(const SaddleSample& si, const SaddleSample& sj) {
  return si.f - sj.f - sj.gx.dot(si.x - sj.x) - si.gy.dot(si.y - sj.y);
}

}  // namespace

KernelSet kernel_matrices(ConstraintSetId set_id, double mu_over_L) {
  if (!(mu_over_L > 0.0 && mu_over_L < 1.0))
    throw std::invalid_argument("kernel_matrices: mu_over_L must lie in (0,1)");
  const double m = mu_over_L;
  KernelSet out;
  switch (set_id) {
    case ConstraintSetId::Full:
      out.kernels = full_kernels(m);
      out.rule.symmetric = {ConstraintId::C1};
      break;
    case ConstraintSetId::Reduced: {
      auto all = full_kernels(m);
      out.kernels = {all[0], all[1]};
      out.rule.symmetric = {ConstraintId::C1};
      out.rule.zeroed = {ConstraintId::C3, ConstraintId::C4};
      break;
    }
    case ConstraintSetId::Definition: {
      auto all = full_kernels(m);
      out.kernels = {all[0], all[1]};
      out.rule.symmetric = {ConstraintId::C1, ConstraintId::C2};
      out.rule.zeroed = {ConstraintId::C3, ConstraintId::C4};
      break;
    }
    case ConstraintSetId::Cocoercive: {
      for (const ConstraintKernel& k : full_kernels(m))
        out.kernels.push_back(to_cocoercive(k));
      out.rule.symmetric = {ConstraintId::C1};
      break;
    }
  }
  return out;
}

double evaluate_pair(const ConstraintKernel& kernel, const SaddleSample& si,
                     const SaddleSample& sj) {
  if (si.x.size() != sj.x.size() || si.y.size() != sj.y.size())
    throw std::invalid_argument("evaluate_pair: sample dimension mismatch");
  return si.f - sj.f + quad_form(kernel.A, si.x, sj.x, si.gx, sj.gx) +
         quad_form(kernel.B, si.y, sj.y, si.gy, sj.gy);
}

CheckReport check_pointwise(ConstraintSetId set_id, const SampleSet& set,
                            double mu, double L, double tol) {
  set.validate();
  double mu_s = mu;
  double L_s = L;
  if (set_id == ConstraintSetId::Cocoercive) {
    // Cocoercive class (M, Lambda) corresponds to the smooth class
    // (M - Lambda/2, Lambda/2); Theorem-9-style inequalities below are the
    // smooth ones pushed through that correspondence.
    L_s = 0.5 * L;
    mu_s = mu - L_s;
  }
  if (!(mu_s > 0.0 && mu_s < L_s))
    throw std::invalid_argument("check_pointwise: need 0 < mu < L");

  const bool cocoercive = set_id == ConstraintSetId::Cocoercive;
  const bool with_c34 =
      set_id == ConstraintSetId::Full || set_id == ConstraintSetId::Cocoercive;
  const bool monotonicity_form = set_id == ConstraintSetId::Definition;

  CheckReport report;
  const auto& s = set.samples;
  const int n = set.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Vector dx = s[i].x - s[j].x;
      const Vector dy = s[i].y - s[j].y;
      const Vector dgx = s[i].gx - s[j].gx;
      const Vector dgy = s[i].gy - s[j].gy;
      const double dz2 = dx.squaredNorm() + dy.squaredNorm();
      const double dg2 = dgx.squaredNorm() + dgy.squaredNorm();
      // <dg^z, dz> with the saddle operator's sign convention on y.
      const double inner = dgx.dot(dx) - dgy.dot(dy);

      if (i < j) {
        // Symmetric in (i, j): check once per unordered pair.
        const double c1 = cocoercive ? 2.0 * L_s * inner - dg2
                                     : L_s * L_s * dz2 - dg2;
        if (c1 < -tol) report.violations.push_back({i, j, "C1", c1});
        if (monotonicity_form) {
          const double c2 = inner - mu_s * dz2;
          if (c2 < -tol) report.violations.push_back({i, j, "C2", c2});
        }
      }
      if (monotonicity_form) continue;

      const double d = cross_gap(s[i], s[j]);
      const double c2 = cocoercive ? d - 0.5 * (mu_s + L_s) * dz2
                                   : d - 0.5 * mu_s * dz2;
      if (c2 < -tol) report.violations.push_back({i, j, "C2", c2});
      if (!with_c34) continue;

      const double inv = 1.0 / (2.0 * (L_s - mu_s));
      double c3, c4;
      if (cocoercive) {
        const double M = mu_s + L_s;
        c3 = d - inv * (dgx - M * dx).squaredNorm() - 0.5 * M * dx.squaredNorm();
        c4 = d - inv * (dgy + M * dy).squaredNorm() - 0.5 * M * dy.squaredNorm();
      } else {
        c3 = d - inv * (dgx - mu_s * dx).squaredNorm() -
             0.5 * mu_s * dx.squaredNorm() + 0.5 * L_s * dy.squaredNorm();
        c4 = d - inv * (dgy + mu_s * dy).squaredNorm() -
             0.5 * mu_s * dy.squaredNorm() + 0.5 * L_s * dx.squaredNorm();
      }
      if (c3 < -tol) report.violations.push_back({i, j, "C3", c3});
      if (c4 < -tol) report.violations.push_back({i, j, "C4", c4});
    }
  }
  return report;
}

std::string to_string(ConstraintSetId set_id) {
  switch (set_id) {
    case ConstraintSetId::Definition: return "def";
    case ConstraintSetId::Reduced: return "reduced";
    case ConstraintSetId::Full: return "full";
    case ConstraintSetId::Cocoercive: return "cocoercive";
  }
  return "?";
}

std::string to_string(ConstraintId c) {
  switch (c) {
    case ConstraintId::C1: return "C1";
    case ConstraintId::C2: return "C2";
    case ConstraintId::C3: return "C3";
    case ConstraintId::C4: return "C4";
  }
  return "?";
}

}  // namespace pep
