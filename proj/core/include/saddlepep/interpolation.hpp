#pragma once

#include "saddlepep/types.hpp"

#include <utility>

namespace pep {

/// Convex-quadratic datum (x_i, g_i, f_i) for the F_{mu,mu} check.
struct GradientSample {
  Vector x;
  Vector g;
  double f = 0.0;
};

/// Convex-concave interpolability: for every ordered pair (i, j),
///   f_i >= f_j + <gx_j, x_i - x_j> + <gy_i, y_i - y_j>.
CheckReport check_interp_s(const SampleSet& set, double tol = kDefaultCheckTol);

/// mu-SCSC interpolability: the convex-concave condition with the quadratic
/// terms mu/2 ||x_i - x_j||^2 + mu/2 ||y_i - y_j||^2 added to the right side.
CheckReport check_interp_smu(const SampleSet& set, double mu,
                             double tol = kDefaultCheckTol);

/// F_{mu,mu} interpolability (pure quadratics of curvature mu): value equality
/// f_i = f_j + 1/2 <g_i + g_j, x_i - x_j> and gradient affinity
/// g_i - g_j = mu (x_i - x_j), both to absolute tolerance.
CheckReport check_interp_fmumu(const std::vector<GradientSample>& points,
                               double mu, double tol = kDefaultCheckTol);

/// Quadratic-saddle interpolability: value equality plus both gradient
/// affinities gx_i - gx_j = mu (x_i - x_j), gy_i - gy_j = -mu (y_i - y_j).
CheckReport check_interp_squad(const SampleSet& set, double mu,
                               double tol = kDefaultCheckTol);

/// Constructs the unique quadratic saddle function through an interpolable
/// set: a = gx_0 - mu x_0, b = gy_0 + mu y_0, c anchored so f_0 is exact.
/// Throws std::invalid_argument (with the violated pair) if the set fails
/// check_interp_squad at `tol`.
QuadraticSaddleFn build_quadratic_interpolant(const SampleSet& set, double mu,
                                              double tol = kDefaultCheckTol);

enum class ShiftDirection { Remove, Add };

/// Pointwise regularization shift. Remove maps each sample to
///   (x, y, gx - mu x, gy + mu y, f - mu/2 ||x||^2 + mu/2 ||y||^2),
/// taking S_mu data to convex-concave data; Add is the exact inverse.
SampleSet shift_regularization(const SampleSet& set, double mu,
                               ShiftDirection direction);

enum class TransformDirection { ToSmooth, ToCocoercive };

/// Correspondence between cocoercive and smooth classes. ToSmooth takes
/// samples of f in CocoerciveScsc(M, Lambda) to samples of
/// f - L/2 ||x||^2 + L/2 ||y||^2 in SmoothScsc(M - Lambda/2, Lambda/2);
/// ToCocoercive inverts it. The two directions compose to the identity.
std::pair<SampleSet, ClassSpec> cocoercive_smooth_transform(
    const SampleSet& set, const ClassSpec& spec, TransformDirection direction);

}  // namespace pep
