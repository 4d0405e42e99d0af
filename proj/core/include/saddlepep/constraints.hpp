#pragma once

#include "saddlepep/types.hpp"

#include <set>
#include <vector>

namespace pep {

/// Which pairwise inequality family a kernel encodes. C1 is the Lipschitz
/// (resp. cocoercivity) bound, C2 the strong-monotonicity lower bound on the
/// cross-gradient gap d(z_i, z_j), C3/C4 the gradient-residual refinements in
/// x and y.
enum class ConstraintId { C1 = 1, C2 = 2, C3 = 3, C4 = 4 };

/// Selectable constraint families for the certification SDP.
enum class ConstraintSetId { Definition, Reduced, Full, Cocoercive };

/// One pairwise inequality family stored at the L = 1 normalization:
///   (f_i - f_j) + q_A([x_i; x_j; gx_i; gx_j]) + q_B([y_i; y_j; gy_i; gy_j]) >= 0
/// where q_A, q_B are the blockwise quadratic forms of A and B. Basis order
/// of both 4x4 blocks is [point_i, point_j, grad_i, grad_j].
struct ConstraintKernel {
  ConstraintId id = ConstraintId::C1;
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d B = Eigen::Matrix4d::Zero();
};

/// Multiplier soundness rules attached to a kernel list. Kernels in
/// `symmetric` carry function-value terms that only cancel for equal
/// multipliers on (i, j) and (j, i); the SDP layer must equate them.
/// Kernels in `zeroed` are excluded from the set entirely.
struct SymmetryRule {
  std::set<ConstraintId> symmetric;
  std::set<ConstraintId> zeroed;

  bool is_symmetric(ConstraintId c) const { return symmetric.count(c) > 0; }
};

struct KernelSet {
  std::vector<ConstraintKernel> kernels;
  SymmetryRule rule;
};

/// Kernels of the requested constraint set at L = 1 with mu replaced by
/// mu_over_L in (0, 1). Cocoercive kernels are derived from the Full ones by
/// the smooth<->cocoercive congruence substitution, so that evaluating them on
/// samples of f in CocoerciveScsc(1 + mu_over_L, 2) equals evaluating the Full
/// kernels on the smooth image of those samples.
KernelSet kernel_matrices(ConstraintSetId set_id, double mu_over_L);

/// Concrete-point instantiation: (f_i - f_j) + q_A + q_B on two samples.
double evaluate_pair(const ConstraintKernel& kernel, const SaddleSample& si,
                     const SaddleSample& sj);

/// Direct evaluation of the selected inequality family on all pairs of a
/// sample set, at general (mu, L). C1 is checked once per unordered pair in
/// its norm form; the d-based inequalities are checked per ordered pair.
/// For the Cocoercive set, (mu, L) are the cocoercive class parameters
/// (M, Lambda) with M > Lambda/2.
CheckReport check_pointwise(ConstraintSetId set_id, const SampleSet& set,
                            double mu, double L, double tol = kDefaultCheckTol);

std::string to_string(ConstraintSetId set_id);
std::string to_string(ConstraintId c);

}  // namespace pep
