#include "projection.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace pep::detail {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int svec_dim(int n) { return n * (n + 1) / 2; }

// Scaled symmetric vectorization: inner products are preserved.
void svec_into(const Matrix& m, Vector& out, int offset) {
  int idx = offset;
  for (int r = 0; r < m.rows(); ++r) {
    out[idx++] = m(r, r);
    for (int c = r + 1; c < m.cols(); ++c) out[idx++] = kSqrt2 * m(r, c);
  }
}

Matrix unsvec(const Vector& v, int offset, int n) {
  Matrix m(n, n);
  int idx = offset;
  for (int r = 0; r < n; ++r) {
    m(r, r) = v[idx++];
    for (int c = r + 1; c < n; ++c) {
      m(r, c) = v[idx] / kSqrt2;
      m(c, r) = m(r, c);
      ++idx;
    }
  }
  return m;
}

}  // namespace

DrResult dr_feasibility(const BlockLmi& lmi, double tol, int max_iterations) {
  // Product space: svec of the four PSD blocks followed by the LP rows.
  std::array<int, 4> offset{};
  int dim = 0;
  for (int b = 0; b < 4; ++b) {
    offset[b] = dim;
    dim += svec_dim(lmi.psd_dim[b]);
  }
  const int lp_offset = dim;
  dim += lmi.n_lp();

  Vector h0 = Vector::Zero(dim);
  for (int b = 0; b < 4; ++b) svec_into(lmi.const_psd[b], h0, offset[b]);
  for (int r = 0; r < lmi.n_lp(); ++r) h0[lp_offset + r] = lmi.const_lp[r];

  Matrix jac = Matrix::Zero(dim, lmi.m);
  for (int i = 0; i < lmi.m; ++i) {
    Vector col = Vector::Zero(dim);
    for (const auto& [b, coef] : lmi.var_psd[i]) svec_into(coef, col, offset[b]);
    jac.col(i) = col;
  }
  for (int r = 0; r < lmi.n_lp(); ++r)
    for (const auto& [i, coef] : lmi.lp_rows[r]) jac(lp_offset + r, i) += coef;

  const Eigen::LDLT<Matrix> gram((jac.transpose() * jac).eval());
  auto recover = [&](const Vector& s) -> Vector {
    return gram.solve(jac.transpose() * (s - h0));
  };
  auto project_affine = [&](const Vector& s) -> Vector {
    return h0 + jac * recover(s);
  };
  auto project_cone = [&](const Vector& s) -> Vector {
    Vector out = s;
    for (int b = 0; b < 4; ++b) {
      const int n = lmi.psd_dim[b];
      Eigen::SelfAdjointEigenSolver<Matrix> eig(unsvec(s, offset[b], n));
      const Matrix clipped = eig.eigenvectors() *
                             eig.eigenvalues().cwiseMax(0.0).asDiagonal() *
                             eig.eigenvectors().transpose();
      svec_into(clipped, out, offset[b]);
    }
    for (int r = 0; r < lmi.n_lp(); ++r)
      out[lp_offset + r] = std::max(out[lp_offset + r], 0.0);
    return out;
  };

  DrResult res;
  Vector s = h0;
  double prev_disp = -1.0;
  const int check_every = 25;
  for (int k = 0; k < max_iterations; ++k) {
    const Vector pk = project_cone(s);
    const Vector pa = project_affine(2.0 * pk - s);
    const Vector next = s + pa - pk;
    const double disp = (next - s).norm();
    s = next;

    if ((k + 1) % check_every == 0) {
      const Vector y = recover(pa);
      const double margin = lmi.margin(y);
      if (margin >= -tol) {
        res.status = DrResult::Status::FoundFeasible;
        res.y = y;
        res.margin = margin;
        res.iterations = k + 1;
        return res;
      }
      if (margin > res.margin) {
        res.margin = margin;
        res.y = y;
      }
      // For an inconsistent pair of sets the iterate displacement converges
      // to the gap between them; a stable, clearly positive displacement is
      // the divergence signal.
      if (k > 2000 && prev_disp > 0.0 && disp > 1e-7 &&
          std::abs(disp - prev_disp) < 1e-2 * disp) {
        res.status = DrResult::Status::Diverging;
        res.iterations = k + 1;
        return res;
      }
      prev_disp = disp;
    }
  }
  res.status = DrResult::Status::IterationLimit;
  res.iterations = max_iterations;
  return res;
}

}  // namespace pep::detail
