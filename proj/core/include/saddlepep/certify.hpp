#pragma once

#include "saddlepep/sdp.hpp"

#include <optional>
#include <vector>

namespace pep {

/// Outcome of the binary search for the smallest certifiable rate. rho = 1
/// with no certificate means no linear convergence was certified; otherwise
/// the certificate verifies at rho^2 and the problem was infeasible (or
/// inconclusive) one bisection step below.
struct RateResult {
  MethodSpec spec;
  ConstraintSetId set_id = ConstraintSetId::Full;
  double kappa = 2.0;
  double eta = 0.0;
  double rho = 1.0;
  std::optional<Certificate> certificate;
};

struct SweepRow {
  double eta = 0.0;
  double rho = 1.0;
};

struct ScalingRow {
  double kappa = 0.0;
  double eta_star = 0.0;
  double rho_star = 1.0;
  double iterations = 0.0;  // N = -1 / log rho_star
  bool converged = false;
};

struct ScalingCurve {
  std::vector<ScalingRow> rows;
  std::optional<double> slope;  // log N vs log kappa least-squares slope
};

struct CertifyOptions {
  double bisect_tol = 1e-4;   // on rho, interval [0, 1]
  SolveOptions solve;
  int jobs = 0;               // 0: hardware concurrency
};

/// Smallest rho in (0, 1] with a feasible certificate at rho^2, by bisection
/// over the monotone feasibility boundary. Inconclusive solves count as
/// infeasible, so only certified rates are ever reported.
RateResult min_rho(const MethodSpec& spec, ConstraintSetId set_id, double kappa,
                   const CertifyOptions& options = {});

/// One min_rho per grid point, rows in grid order; solves run in parallel.
std::vector<RateResult> sweep_eta(Method method, ConstraintSetId set_id,
                                  double kappa,
                                  const std::vector<double>& eta_grid,
                                  const CertifyOptions& options = {});

struct OptimalEta {
  double eta_star = 0.0;
  double rho_star = 1.0;
  bool converged = false;  // false when no eta certified rho < 1
};

/// Coarse grid scan followed by golden-section refinement of rho(eta).
OptimalEta optimal_eta(Method method, ConstraintSetId set_id, double kappa,
                       const std::vector<double>& coarse_grid,
                       int refine_iters, const CertifyOptions& options = {});

/// N(kappa) = -1/log rho at the per-kappa optimal step size, plus the
/// least-squares slope of log N vs log kappa. Points with kappa < 10 are kept
/// in the rows but excluded from the fit (small-kappa curvature);
/// non-converged rows are excluded and flagged.
ScalingCurve scaling_curve(Method method, ConstraintSetId set_id,
                           const std::vector<double>& kappas,
                           const CertifyOptions& options = {});

/// Default logarithmic eta grid (60 points) used by sweeps and scaling.
std::vector<double> default_eta_grid(int points = 60, double lo = 1e-4,
                                     double hi = 2.0);

}  // namespace pep
