#pragma once

#include "saddlepep/lyapunov.hpp"

#include <array>
#include <utility>
#include <vector>

namespace pep::detail {

/// The assembled problem reduced to an explicit block LMI in "value form":
/// variables y = [v0; v1; px; py], block b takes the value
///   const_psd[b] + sum_i y_i * coef_i[b]
/// and feasibility asks all four PSD blocks and every LP row to be >= 0.
/// v0/v1 are orthonormal null-space coordinates of the per-stage equality
/// rows, so the equalities hold identically; px/py are packed symmetric P
/// coordinates. LP rows encode the multiplier sign constraints w = B v >= 0.
struct BlockLmi {
  int m = 0;
  std::array<int, 4> psd_dim{};  // stage0 x, stage0 y, stage1 x, stage1 y
  std::array<Matrix, 4> const_psd;
  std::vector<std::vector<std::pair<int, Matrix>>> var_psd;  // per variable
  std::vector<double> const_lp;
  std::vector<std::vector<std::pair<int, double>>> lp_rows;

  // variable layout and the multiplier recovery data
  int k0 = 0, k1 = 0;      // raw multiplier counts per stage
  Matrix basis0, basis1;   // k x k_reduced, orthonormal columns
  int off_v0 = 0, off_v1 = 0, off_px = 0, off_py = 0;
  int p = 0;

  int n_lp() const { return static_cast<int>(const_lp.size()); }

  /// Splits a variable vector into raw multipliers and P matrices.
  void unpack(const Vector& y, std::vector<double>& w0, std::vector<double>& w1,
              Matrix& Px, Matrix& Py) const;

  /// Block values at y.
  std::array<Matrix, 4> psd_values(const Vector& y) const;
  Vector lp_values(const Vector& y) const;

  /// Smallest PSD-block eigenvalue / LP row value at y.
  double margin(const Vector& y) const;
};

BlockLmi build_block_lmi(const LyapSdp& sdp);

/// Packed symmetric basis: index l runs over (r, c) with r <= c; unpack
/// produces E_rr or E_rc + E_cr.
Matrix sym_basis_matrix(int p, int l);
int sym_dim(int p);

}  // namespace pep::detail
