#include "saddlepep/sdp.hpp"

#include "block_lmi.hpp"
#include "ipm.hpp"
#include "projection.hpp"

#include <Eigen/Dense>

#include <cstdlib>
#include <map>
#include <stdexcept>

namespace pep {

namespace {

void validate_problem(const LyapSdp& sdp) {
  auto check_stage = [](const LyapStage& stage, const char* name) {
    const int n = stage.trace.n;
    for (const LiftedConstraint& c : stage.constraints) {
      if (c.A.rows() != n || c.A.cols() != n || c.B.rows() != n ||
          c.B.cols() != n)
        throw std::invalid_argument(std::string("LyapSdp: bad block size in ") +
                                    name);
      if ((c.A - c.A.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
          (c.B - c.B.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument(
            std::string("LyapSdp: asymmetric lifted block in ") + name);
      if (c.var < 0 || c.var >= stage.n_vars)
        throw std::invalid_argument(
            std::string("LyapSdp: multiplier index out of range in ") + name);
    }
  };
  check_stage(sdp.stage0, "stage 0");
  check_stage(sdp.stage1, "stage 1");
  if (!(sdp.rho2 >= 0.0)) throw std::invalid_argument("LyapSdp: rho2 < 0");
}

Certificate make_certificate(const LyapSdp& sdp, const detail::BlockLmi& lmi,
                             const Vector& y) {
  Certificate cert;
  cert.rho2 = sdp.rho2;
  std::vector<double> w0, w1;
  lmi.unpack(y, w0, w1, cert.Px, cert.Py);
  for (const LiftedConstraint& c : sdp.stage0.constraints)
    cert.lambda.push_back({c.c, c.i, c.j, w0[c.var]});
  for (const LiftedConstraint& c : sdp.stage1.constraints)
    cert.nu.push_back({c.c, c.i, c.j, w1[c.var]});
  cert.residuals = compute_residuals(sdp, cert);
  return cert;
}

double min_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

// Per-ordered-constraint multiplier lookup from certificate entries.
std::vector<double> values_by_var(const LyapStage& stage,
                                  const std::vector<MultiplierEntry>& entries) {
  std::vector<double> w(stage.n_vars, 0.0);
  if (entries.size() != stage.constraints.size())
    throw std::invalid_argument(
        "Certificate: multiplier entry count does not match the problem");
  for (size_t k = 0; k < entries.size(); ++k) {
    const LiftedConstraint& c = stage.constraints[k];
    if (entries[k].c != c.c || entries[k].i != c.i || entries[k].j != c.j)
      throw std::invalid_argument(
          "Certificate: multiplier entries out of order");
    w[c.var] = entries[k].value;
  }
  return w;
}

}  // namespace

std::vector<double> Certificate::lambda_by_var(const LyapSdp& sdp) const {
  return values_by_var(sdp.stage0, lambda);
}
std::vector<double> Certificate::nu_by_var(const LyapSdp& sdp) const {
  return values_by_var(sdp.stage1, nu);
}

SolveOptions options_from_env() {
  SolveOptions opts;
  if (const char* env = std::getenv("SADDLEPEP_SDP_BACKEND")) {
    const std::string v(env);
    if (v == "dr" || v == "projection")
      opts.backend = SdpBackend::ProjectionFallback;
  }
  return opts;
}

SolveOutcome solve_feasibility(const LyapSdp& problem,
                               const SolveOptions& options) {
  validate_problem(problem);
  const detail::BlockLmi lmi = detail::build_block_lmi(problem);
  SolveOutcome out;

  if (options.backend == SdpBackend::ProjectionFallback) {
    const detail::DrResult res =
        detail::dr_feasibility(lmi, 10.0 * options.tol, options.dr_max_iterations);
    out.margin = res.margin;
    switch (res.status) {
      case detail::DrResult::Status::FoundFeasible:
        out.status = SolveStatus::Feasible;
        out.certificate = make_certificate(problem, lmi, res.y);
        break;
      case detail::DrResult::Status::Diverging:
        out.status = SolveStatus::Infeasible;
        break;
      case detail::DrResult::Status::IterationLimit:
        out.status = SolveStatus::Inconclusive;
        out.reason = "projection backend hit its iteration limit";
        break;
    }
    return out;
  }

  double bound = options.variable_bound;
  for (int attempt = 0; attempt < 2; ++attempt) {
    detail::IpmResult res =
        detail::ipm_max_margin(lmi, bound, options.max_iterations);
    if (res.status == detail::IpmResult::Status::NumericalFailure) {
      out.status = SolveStatus::Inconclusive;
      out.reason = "interior-point failure: " + res.note;
      return out;
    }
    // A certificate is accepted only on its independently recomputed margin.
    const double actual = lmi.margin(res.y);
    out.margin = actual;
    if (actual > options.tol) {
      out.status = SolveStatus::Feasible;
      out.certificate = make_certificate(problem, lmi, res.y);
      return out;
    }
    if (res.hit_bound && attempt == 0) {
      bound *= 100.0;  // certificate pressed against the box; retry larger
      continue;
    }
    if (res.status == detail::IpmResult::Status::Converged &&
        res.margin < -options.tol) {
      out.status = SolveStatus::Infeasible;
      return out;
    }
    out.status = SolveStatus::Inconclusive;
    out.reason = res.status == detail::IpmResult::Status::Converged
                     ? "optimal margin inside the decision band"
                     : "interior point did not converge";
    return out;
  }
  return out;
}

CertificateResiduals compute_residuals(const LyapSdp& problem,
                                       const Certificate& cert) {
  const std::vector<double> w0 = cert.lambda_by_var(problem);
  const std::vector<double> w1 = cert.nu_by_var(problem);
  CertificateResiduals r;
  r.min_multiplier = 0.0;
  for (const MultiplierEntry& e : cert.lambda)
    r.min_multiplier = std::min(r.min_multiplier, e.value);
  for (const MultiplierEntry& e : cert.nu)
    r.min_multiplier = std::min(r.min_multiplier, e.value);
  r.min_eig_stage0_x = min_eig(problem.block0_x(cert.Px, w0));
  r.min_eig_stage0_y = min_eig(problem.block0_y(cert.Py, w0));
  r.min_eig_stage1_x = min_eig(problem.block1_x(cert.Px, w1));
  r.min_eig_stage1_y = min_eig(problem.block1_y(cert.Py, w1));
  r.max_equality_residual =
      std::max(problem.equality0(w0).cwiseAbs().maxCoeff(),
               problem.equality1(w1).cwiseAbs().maxCoeff());
  return r;
}

CheckReport verify_certificate(const LyapSdp& problem, const Certificate& cert,
                               double tol) {
  if (cert.Px.rows() != problem.p || cert.Px.cols() != problem.p ||
      cert.Py.rows() != problem.p || cert.Py.cols() != problem.p)
    throw std::invalid_argument("verify_certificate: P shape mismatch");
  CheckReport report;
  auto add = [&report](const std::string& id, double slack) {
    if (slack < 0.0) report.violations.push_back({0, 0, id, slack});
  };

  // Symmetric multiplier pairs must carry equal values.
  auto check_symmetry = [&](const LyapStage& stage,
                            const std::vector<MultiplierEntry>& entries,
                            const char* name) {
    std::map<std::tuple<std::string, std::string, std::string>, double> seen;
    for (const MultiplierEntry& e : entries) {
      if (!problem.rule.is_symmetric(e.c)) continue;
      const auto key = e.i < e.j
                           ? std::make_tuple(to_string(e.c), e.i, e.j)
                           : std::make_tuple(to_string(e.c), e.j, e.i);
      auto [it, inserted] = seen.try_emplace(key, e.value);
      if (!inserted)
        add(std::string("symmetry:") + name, tol - std::abs(it->second - e.value));
    }
    (void)stage;
  };
  check_symmetry(problem.stage0, cert.lambda, "stage0");
  check_symmetry(problem.stage1, cert.nu, "stage1");

  const CertificateResiduals r = compute_residuals(problem, cert);
  add("multiplier", r.min_multiplier + tol);
  add("psd:stage0_x", r.min_eig_stage0_x + tol);
  add("psd:stage0_y", r.min_eig_stage0_y + tol);
  add("psd:stage1_x", r.min_eig_stage1_x + tol);
  add("psd:stage1_y", r.min_eig_stage1_y + tol);
  add("equality:max", tol - r.max_equality_residual);
  return report;
}

}  // namespace pep
