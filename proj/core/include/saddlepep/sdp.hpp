#pragma once

#include "saddlepep/lyapunov.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pep {

struct MultiplierEntry {
  ConstraintId c = ConstraintId::C1;
  std::string i;
  std::string j;
  double value = 0.0;
};

/// Residual summary of an independent certificate recheck.
struct CertificateResiduals {
  double min_multiplier = 0.0;
  double min_eig_stage0_x = 0.0;
  double min_eig_stage0_y = 0.0;
  double min_eig_stage1_x = 0.0;
  double min_eig_stage1_y = 0.0;
  double max_equality_residual = 0.0;
};

/// Feasibility witness for (the assembled) Lyapunov SDP: one multiplier per
/// ordered constraint (symmetric pairs carry equal values), the P matrices
/// and the contraction factor they certify.
struct Certificate {
  double rho2 = 1.0;
  std::vector<MultiplierEntry> lambda;  // stage 0
  std::vector<MultiplierEntry> nu;      // stage 1
  Matrix Px;
  Matrix Py;
  CertificateResiduals residuals;

  std::vector<double> lambda_by_var(const LyapSdp& sdp) const;
  std::vector<double> nu_by_var(const LyapSdp& sdp) const;
};

enum class SolveStatus { Feasible, Infeasible, Inconclusive };

struct SolveOutcome {
  SolveStatus status = SolveStatus::Inconclusive;
  std::optional<Certificate> certificate;  // present iff Feasible
  double margin = 0.0;                     // best uniform PSD margin found
  std::string reason;                      // set for Inconclusive
};

enum class SdpBackend {
  InteriorPoint,        // primal-dual HKM path following (default)
  ProjectionFallback,   // Douglas-Rachford splitting, for cross-checks
};

struct SolveOptions {
  SdpBackend backend = SdpBackend::InteriorPoint;
  double tol = 1e-8;          // feasibility decision band on the margin
  int max_iterations = 200;   // interior-point iterations
  double variable_bound = 1e6;  // box on multipliers and P entries
  int dr_max_iterations = 40000;
};

/// Reads SADDLEPEP_SDP_BACKEND ("ipm" or "dr") into default options.
SolveOptions options_from_env();

/// Decides feasibility of the assembled problem at its fixed rho^2 by
/// maximizing a uniform margin t with blocks >= t I. Deterministic for
/// identical inputs and backend. Numerical failure or a margin inside the
/// decision band yields Inconclusive, never a silent Feasible.
SolveOutcome solve_feasibility(const LyapSdp& problem,
                               const SolveOptions& options = {});

/// Recomputes every PSD block, multiplier sign and equality row from scratch
/// with the certificate's numbers (independent of the solve path). Reported
/// violations carry ids "multiplier", "psd:<block>", "equality:<stage>".
CheckReport verify_certificate(const LyapSdp& problem, const Certificate& cert,
                               double tol = 1e-6);

/// Fills cert.residuals from the recheck (same computation as
/// verify_certificate).
CertificateResiduals compute_residuals(const LyapSdp& problem,
                                       const Certificate& cert);

}  // namespace pep
