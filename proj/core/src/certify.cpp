#include "saddlepep/certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace pep {

namespace {

bool feasible_at(const MethodSpec& spec, ConstraintSetId set_id, double kappa,
                 double rho, const SolveOptions& solve,
                 std::optional<Certificate>* cert) {
  const LyapSdp sdp = assemble(spec, set_id, kappa, rho * rho);
  SolveOutcome out = solve_feasibility(sdp, solve);
  if (out.status == SolveStatus::Feasible) {
    if (cert) *cert = std::move(out.certificate);
    return true;
  }
  return false;  // Inconclusive is treated as infeasible (conservative)
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double golden_ratio() { return 0.5 * (std::sqrt(5.0) - 1.0); }

}  // namespace

std::vector<double> default_eta_grid(int points, double lo, double hi) {
  if (points < 1 || !(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("default_eta_grid: bad parameters");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(step * i);
  return grid;
}

RateResult min_rho(const MethodSpec& spec, ConstraintSetId set_id, double kappa,
                   const CertifyOptions& options) {
  if (!(options.bisect_tol > 0.0))
    throw std::invalid_argument("min_rho: bisect_tol must be > 0");
  RateResult result;
  result.spec = spec;
  result.set_id = set_id;
  result.kappa = kappa;
  result.eta = spec.eta;

  std::optional<Certificate> cert;
  if (!feasible_at(spec, set_id, kappa, 1.0, options.solve, &cert)) {
    result.rho = 1.0;
    return result;  // nothing certified, no certificate by contract
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > options.bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    std::optional<Certificate> mid_cert;
    if (feasible_at(spec, set_id, kappa, mid, options.solve, &mid_cert)) {
      hi = mid;
      cert = std::move(mid_cert);
    } else {
      lo = mid;
    }
  }
  result.rho = hi;
  result.certificate = std::move(cert);
  return result;
}

std::vector<RateResult> sweep_eta(Method method, ConstraintSetId set_id,
                                  double kappa,
                                  const std::vector<double>& eta_grid,
                                  const CertifyOptions& options) {
  if (eta_grid.empty()) throw std::invalid_argument("sweep_eta: empty grid");
  for (size_t i = 0; i < eta_grid.size(); ++i) {
    if (!(eta_grid[i] > 0.0) ||
        (i > 0 && !(eta_grid[i] > eta_grid[i - 1])))
      throw std::invalid_argument(
          "sweep_eta: grid must be strictly increasing and positive");
  }
  std::vector<RateResult> rows(eta_grid.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= eta_grid.size()) return;
      rows[i] = min_rho({method, eta_grid[i]}, set_id, kappa, options);
    }
  };
  const int jobs = std::min<int>(resolve_jobs(options.jobs),
                                 static_cast<int>(eta_grid.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return rows;
}

OptimalEta optimal_eta(Method method, ConstraintSetId set_id, double kappa,
                       const std::vector<double>& coarse_grid,
                       int refine_iters, const CertifyOptions& options) {
  const std::vector<RateResult> rows =
      sweep_eta(method, set_id, kappa, coarse_grid, options);
  size_t best = 0;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].rho < rows[best].rho) best = i;
  OptimalEta out;
  if (rows[best].rho >= 1.0) return out;  // no certified convergence

  out.converged = true;
  out.eta_star = rows[best].eta;
  out.rho_star = rows[best].rho;
  if (refine_iters <= 0) return out;

  auto rho_at = [&](double eta) {
    return min_rho({method, eta}, set_id, kappa, options).rho;
  };
  double a = coarse_grid[best > 0 ? best - 1 : best];
  double b = coarse_grid[std::min(best + 1, rows.size() - 1)];
  if (a >= b) return out;
  const double gr = golden_ratio();
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = rho_at(c);
  double fd = rho_at(d);
  for (int it = 0; it < refine_iters; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = rho_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = rho_at(d);
    }
  }
  if (fc < out.rho_star) {
    out.rho_star = fc;
    out.eta_star = c;
  }
  if (fd < out.rho_star) {
    out.rho_star = fd;
    out.eta_star = d;
  }
  return out;
}

ScalingCurve scaling_curve(Method method, ConstraintSetId set_id,
                           const std::vector<double>& kappas,
                           const CertifyOptions& options) {
  if (kappas.size() < 2)
    throw std::invalid_argument("scaling_curve: need at least two kappas");
  for (size_t i = 1; i < kappas.size(); ++i)
    if (!(kappas[i] > kappas[i - 1]))
      throw std::invalid_argument("scaling_curve: kappas must be increasing");

  ScalingCurve curve;
  const std::vector<double> grid = default_eta_grid();
  for (double kappa : kappas) {
    const OptimalEta opt = optimal_eta(method, set_id, kappa, grid, 25, options);
    ScalingRow row;
    row.kappa = kappa;
    row.converged = opt.converged;
    if (opt.converged) {
      row.eta_star = opt.eta_star;
      row.rho_star = opt.rho_star;
      row.iterations = -1.0 / std::log(opt.rho_star);
    }
    curve.rows.push_back(row);
  }

  // Least-squares slope of log N against log kappa on the fitted points.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const ScalingRow& row : curve.rows) {
    if (!row.converged || row.kappa < 10.0) continue;
    const double x = std::log(row.kappa);
    const double y = std::log(row.iterations);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2 && sxx * n - sx * sx > 0.0)
    curve.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return curve;
}

}  // namespace pep
