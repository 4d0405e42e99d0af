#pragma once

#include "saddlepep/constraints.hpp"
#include "saddlepep/trace.hpp"

#include <string>
#include <vector>

namespace pep {

/// One Gram-lifted pairwise constraint: n x n blocks for the x- and y-Gram
/// matrices and the function-value coefficient row m = f_i - f_j. `var` is
/// the index of the multiplier variable backing this constraint; constraints
/// under a symmetry rule share one variable per unordered pair.
struct LiftedConstraint {
  ConstraintId c = ConstraintId::C1;
  std::string i;
  std::string j;
  Matrix A;
  Matrix B;
  Eigen::RowVectorXd m;
  int var = -1;
};

/// One certification stage (K = 0 or K = 1): its trace, the lifted
/// constraints over the stage's index set, and the stage's block geometry.
struct LyapStage {
  SymbolicTrace trace;
  std::vector<LiftedConstraint> constraints;
  int n_vars = 0;

  // State selectors (state_dim x n). Stage 0 uses only the `cur` pair; stage
  // 1 combines cur and prev as P^(1) = S_cur' P S_cur - rho^2 S_prev' P S_prev.
  Matrix state_x_cur, state_y_cur;
  Matrix state_x_prev, state_y_prev;

  // Normalization anchors subtracted from the stage-0 PSD blocks; zero for
  // stage 1. Anchoring at the Gram form of |x_0 - x_*|^2 (resp. y) makes the
  // certified Lyapunov function dominate the squared distance to the saddle,
  // which rules out the all-zero certificate.
  Matrix anchor_x, anchor_y;
};

/// The assembled semidefinite feasibility problem at a fixed contraction
/// factor rho^2: multipliers lambda (stage 0) and nu (stage 1), symmetric
/// P_x, P_y of size p, PSD blocks
///   P^(0)_x - sum lambda A^(0) - anchor_x >= 0          (and y-block)
///   -(P^(1)_x + sum nu A^(1)) >= 0                      (and y-block)
/// and per-stage equality rows sum lambda m = 0, sum nu m = 0.
struct LyapSdp {
  MethodSpec spec;
  ConstraintSetId set_id = ConstraintSetId::Full;
  SymmetryRule rule;
  double kappa = 2.0;
  double rho2 = 1.0;
  int p = 2;
  LyapStage stage0;
  LyapStage stage1;

  // Block expressions given concrete P and multiplier values (stage-0 blocks
  // include the anchor subtraction; stage-1 blocks are returned negated, so
  // all four are PSD for a feasible point).
  Matrix block0_x(const Matrix& Px, const std::vector<double>& lambda) const;
  Matrix block0_y(const Matrix& Py, const std::vector<double>& lambda) const;
  Matrix block1_x(const Matrix& Px, const std::vector<double>& nu) const;
  Matrix block1_y(const Matrix& Py, const std::vector<double>& nu) const;
  Vector equality0(const std::vector<double>& lambda) const;
  Vector equality1(const std::vector<double>& nu) const;
};

/// Congruence lift of one kernel onto the trace basis for the ordered pair
/// (i, j): A_lift = V' A V with V = [x_i; x_j; gx_i; gx_j] (rows of basis
/// coefficients), likewise for B, and m = f_i - f_j. Output symmetrized.
LiftedConstraint lift_kernel(const ConstraintKernel& kernel,
                             const SymbolicTrace& trace, const std::string& i,
                             const std::string& j);

/// Stage-1 Lyapunov block expressions as selector matrices: with states
/// s_cur/s_prev, P^(1) = s_cur' P s_cur - rho2 s_prev' P s_prev.
struct LyapunovBlocks {
  Matrix s0x, s0y;                        // stage-0 selectors
  Matrix s1x_cur, s1y_cur;                // stage-1 current state
  Matrix s1x_prev, s1y_prev;              // stage-1 previous state
  double rho2 = 1.0;

  Matrix p0_x(const Matrix& Px) const;
  Matrix p0_y(const Matrix& Py) const;
  Matrix p1_x(const Matrix& Px) const;
  Matrix p1_y(const Matrix& Py) const;
};

LyapunovBlocks lyapunov_blocks(const SymbolicTrace& stage0,
                               const SymbolicTrace& stage1, double rho2);

/// Assembles the full problem at L = 1, mu = 1/kappa.
LyapSdp assemble(const MethodSpec& spec, ConstraintSetId set_id, double kappa,
                 double rho2);

}  // namespace pep
