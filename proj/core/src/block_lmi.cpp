#include "block_lmi.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace pep::detail {

namespace {

// Orthonormal basis of the null space of E (columns), empty when E has full
// column rank.
Matrix null_space(const Matrix& e) {
  if (e.rows() == 0) return Matrix::Identity(e.cols(), e.cols());
  Eigen::FullPivLU<Matrix> lu(e);
  lu.setThreshold(1e-12);
  Matrix kernel = lu.kernel();
  if (kernel.cols() == 1 && kernel.isZero(0.0)) return Matrix(e.cols(), 0);
  Eigen::HouseholderQR<Matrix> qr(kernel);
  Matrix q = qr.householderQ() * Matrix::Identity(kernel.rows(), kernel.cols());
  return q;
}

// Equality-row matrix of one stage: rows over the f-basis, columns over the
// stage's multiplier variables.
Matrix equality_matrix(const LyapStage& stage, int n_vars) {
  Matrix e = Matrix::Zero(stage.trace.n_f, n_vars);
  for (const LiftedConstraint& c : stage.constraints)
    e.col(c.var) += c.m.transpose();
  return e;
}

}  // namespace

int sym_dim(int p) { return p * (p + 1) / 2; }

Matrix sym_basis_matrix(int p, int l) {
  int idx = 0;
  for (int r = 0; r < p; ++r) {
    for (int c = r; c < p; ++c, ++idx) {
      if (idx == l) {
        Matrix e = Matrix::Zero(p, p);
        e(r, c) = 1.0;
        e(c, r) = 1.0;
        return e;
      }
    }
  }
  throw std::out_of_range("sym_basis_matrix: index out of range");
}

void BlockLmi::unpack(const Vector& y, std::vector<double>& w0,
                      std::vector<double>& w1, Matrix& Px, Matrix& Py) const {
  const Vector v0 = y.segment(off_v0, basis0.cols());
  const Vector v1 = y.segment(off_v1, basis1.cols());
  const Vector raw0 = basis0 * v0;
  const Vector raw1 = basis1 * v1;
  w0.assign(raw0.data(), raw0.data() + raw0.size());
  w1.assign(raw1.data(), raw1.data() + raw1.size());
  Px = Matrix::Zero(p, p);
  Py = Matrix::Zero(p, p);
  for (int l = 0; l < sym_dim(p); ++l) {
    Px += y[off_px + l] * sym_basis_matrix(p, l);
    Py += y[off_py + l] * sym_basis_matrix(p, l);
  }
}

std::array<Matrix, 4> BlockLmi::psd_values(const Vector& y) const {
  std::array<Matrix, 4> blocks = const_psd;
  for (int i = 0; i < m; ++i)
    for (const auto& [b, coef] : var_psd[i]) blocks[b] += y[i] * coef;
  return blocks;
}

Vector BlockLmi::lp_values(const Vector& y) const {
  Vector vals = Eigen::Map<const Vector>(const_lp.data(), n_lp());
  for (int r = 0; r < n_lp(); ++r)
    for (const auto& [i, coef] : lp_rows[r]) vals[r] += y[i] * coef;
  return vals;
}

double BlockLmi::margin(const Vector& y) const {
  double mgn = std::numeric_limits<double>::infinity();
  for (const Matrix& blk : psd_values(y)) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(blk, Eigen::EigenvaluesOnly);
    mgn = std::min(mgn, eig.eigenvalues().minCoeff());
  }
  const Vector lp = lp_values(y);
  if (lp.size() > 0) mgn = std::min(mgn, lp.minCoeff());
  return mgn;
}

BlockLmi build_block_lmi(const LyapSdp& sdp) {
  BlockLmi lmi;
  lmi.p = sdp.p;
  lmi.k0 = sdp.stage0.n_vars;
  lmi.k1 = sdp.stage1.n_vars;
  lmi.basis0 = null_space(equality_matrix(sdp.stage0, lmi.k0));
  lmi.basis1 = null_space(equality_matrix(sdp.stage1, lmi.k1));

  const int r0 = static_cast<int>(lmi.basis0.cols());
  const int r1 = static_cast<int>(lmi.basis1.cols());
  const int pd = sym_dim(sdp.p);
  lmi.off_v0 = 0;
  lmi.off_v1 = r0;
  lmi.off_px = r0 + r1;
  lmi.off_py = r0 + r1 + pd;
  lmi.m = r0 + r1 + 2 * pd;
  lmi.var_psd.resize(lmi.m);

  const int n0 = sdp.stage0.trace.n;
  const int n1 = sdp.stage1.trace.n;
  lmi.psd_dim = {n0, n0, n1, n1};
  lmi.const_psd = {-sdp.stage0.anchor_x, -sdp.stage0.anchor_y,
                   Matrix::Zero(n1, n1), Matrix::Zero(n1, n1)};

  // Raw per-multiplier lifted sums (a symmetric pair shares one variable, so
  // both of its lifted matrices accumulate onto that variable).
  std::vector<Matrix> rawA0(lmi.k0, Matrix::Zero(n0, n0));
  std::vector<Matrix> rawB0(lmi.k0, Matrix::Zero(n0, n0));
  for (const LiftedConstraint& c : sdp.stage0.constraints) {
    rawA0[c.var] += c.A;
    rawB0[c.var] += c.B;
  }
  std::vector<Matrix> rawA1(lmi.k1, Matrix::Zero(n1, n1));
  std::vector<Matrix> rawB1(lmi.k1, Matrix::Zero(n1, n1));
  for (const LiftedConstraint& c : sdp.stage1.constraints) {
    rawA1[c.var] += c.A;
    rawB1[c.var] += c.B;
  }

  // Stage-0 multiplier coordinates: block value -= (basis * v)_k * raw_k.
  for (int j = 0; j < r0; ++j) {
    Matrix cx = Matrix::Zero(n0, n0);
    Matrix cy = Matrix::Zero(n0, n0);
    for (int k = 0; k < lmi.k0; ++k) {
      const double w = lmi.basis0(k, j);
      if (w != 0.0) {
        cx -= w * rawA0[k];
        cy -= w * rawB0[k];
      }
    }
    lmi.var_psd[lmi.off_v0 + j].push_back({0, std::move(cx)});
    lmi.var_psd[lmi.off_v0 + j].push_back({1, std::move(cy)});
  }
  for (int j = 0; j < r1; ++j) {
    Matrix cx = Matrix::Zero(n1, n1);
    Matrix cy = Matrix::Zero(n1, n1);
    for (int k = 0; k < lmi.k1; ++k) {
      const double w = lmi.basis1(k, j);
      if (w != 0.0) {
        cx -= w * rawA1[k];
        cy -= w * rawB1[k];
      }
    }
    lmi.var_psd[lmi.off_v1 + j].push_back({2, std::move(cx)});
    lmi.var_psd[lmi.off_v1 + j].push_back({3, std::move(cy)});
  }

  // P coordinates. Stage-0 blocks carry +S0' E S0; stage-1 blocks carry the
  // negated Lyapunov difference -(S1c' E S1c - rho2 S1p' E S1p).
  for (int l = 0; l < pd; ++l) {
    const Matrix e = sym_basis_matrix(sdp.p, l);
    lmi.var_psd[lmi.off_px + l].push_back(
        {0, sdp.stage0.state_x_cur.transpose() * e * sdp.stage0.state_x_cur});
    lmi.var_psd[lmi.off_px + l].push_back(
        {2, -(sdp.stage1.state_x_cur.transpose() * e * sdp.stage1.state_x_cur) +
                sdp.rho2 * sdp.stage1.state_x_prev.transpose() * e *
                    sdp.stage1.state_x_prev});
    lmi.var_psd[lmi.off_py + l].push_back(
        {1, sdp.stage0.state_y_cur.transpose() * e * sdp.stage0.state_y_cur});
    lmi.var_psd[lmi.off_py + l].push_back(
        {3, -(sdp.stage1.state_y_cur.transpose() * e * sdp.stage1.state_y_cur) +
                sdp.rho2 * sdp.stage1.state_y_prev.transpose() * e *
                    sdp.stage1.state_y_prev});
  }

  // Multiplier sign rows: (basis * v)_k >= 0.
  for (int k = 0; k < lmi.k0; ++k) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < r0; ++j)
      if (lmi.basis0(k, j) != 0.0) row.push_back({lmi.off_v0 + j, lmi.basis0(k, j)});
    lmi.lp_rows.push_back(std::move(row));
    lmi.const_lp.push_back(0.0);
  }
  for (int k = 0; k < lmi.k1; ++k) {
    std::vector<std::pair<int, double>> row;
    for (int j = 0; j < r1; ++j)
      if (lmi.basis1(k, j) != 0.0) row.push_back({lmi.off_v1 + j, lmi.basis1(k, j)});
    lmi.lp_rows.push_back(std::move(row));
    lmi.const_lp.push_back(0.0);
  }
  return lmi;
}

}  // namespace pep::detail
