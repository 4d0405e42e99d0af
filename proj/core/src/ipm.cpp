#include "ipm.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace pep::detail {

namespace {

// Dual-form SDP in textbook orientation:
//   maximize b'y  subject to  Z = C - sum_i y_i A_i >= 0,
// with dense symmetric PSD blocks plus one diagonal block of linear rows.
struct Problem {
  int m = 0;
  std::vector<int> dim;
  std::vector<Matrix> c_psd;
  std::vector<std::vector<std::pair<int, Matrix>>> a_psd;   // per variable
  std::vector<std::vector<std::pair<int, const Matrix*>>> block_terms;
  Vector c_lp;
  std::vector<std::vector<std::pair<int, double>>> lp_rows;
  std::vector<std::vector<std::pair<int, double>>> lp_cols;
  Vector b;

  int n_lp() const { return static_cast<int>(c_lp.size()); }
  int n_psd() const { return static_cast<int>(dim.size()); }
};

// Largest alpha in (0, 1] with S + alpha D >= 0, dampened by tau.
double psd_max_step(const Matrix& s, const Matrix& d, double tau) {
  Eigen::LLT<Matrix> llt(s);
  if (llt.info() != Eigen::Success) return 0.0;
  const Matrix l = llt.matrixL();
  const Matrix li = l.triangularView<Eigen::Lower>().solve(
      Matrix::Identity(s.rows(), s.cols()));
  const Matrix w = li * d * li.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (w + w.transpose()),
                                            Eigen::EigenvaluesOnly);
  const double lam = eig.eigenvalues().minCoeff();
  if (lam >= 0.0) return 1.0;
  return std::min(1.0, -tau / lam);
}

double lp_max_step(const Vector& x, const Vector& d, double tau) {
  double a = 1.0;
  for (Eigen::Index r = 0; r < x.size(); ++r)
    if (d[r] < 0.0) a = std::min(a, -tau * x[r] / d[r]);
  return a;
}

}  // namespace

IpmResult ipm_max_margin(const BlockLmi& lmi, double var_bound,
                         int max_iterations) {
  // Wrap the LMI into dual form with the margin variable t appended. The
  // value form F_b(y) >= 0 maps to C_b = const, A_i = -coef; the margin
  // enters every PSD block as A_t = I, so Z_b = F_b(y) - t I.
  Problem p;
  const int mt = lmi.m;
  p.m = lmi.m + 1;
  p.dim.assign(lmi.psd_dim.begin(), lmi.psd_dim.end());
  p.c_psd.assign(lmi.const_psd.begin(), lmi.const_psd.end());
  p.a_psd.resize(p.m);
  for (int i = 0; i < lmi.m; ++i)
    for (const auto& [b, coef] : lmi.var_psd[i])
      p.a_psd[i].push_back({b, -coef});
  for (int b = 0; b < p.n_psd(); ++b)
    p.a_psd[mt].push_back({b, Matrix::Identity(p.dim[b], p.dim[b])});
  p.block_terms.resize(p.n_psd());
  for (int i = 0; i < p.m; ++i)
    for (const auto& [b, a] : p.a_psd[i]) p.block_terms[b].push_back({i, &a});

  // LP rows: multiplier signs, w <= bound, |P entries| <= bound, t <= 1.
  std::vector<double> c_lp(lmi.const_lp);
  std::vector<std::vector<std::pair<int, double>>> rows;
  for (const auto& row : lmi.lp_rows) {
    std::vector<std::pair<int, double>> r;
    for (const auto& [i, coef] : row) r.push_back({i, -coef});
    rows.push_back(std::move(r));
  }
  const int n_sign = static_cast<int>(rows.size());
  for (const auto& row : lmi.lp_rows) {
    rows.push_back(row);  // bound - w >= 0: A entries are +coef
    c_lp.push_back(var_bound);
  }
  for (int l = lmi.off_px; l < lmi.off_px + 2 * sym_dim(lmi.p); ++l) {
    rows.push_back({{l, 1.0}});
    c_lp.push_back(var_bound);
    rows.push_back({{l, -1.0}});
    c_lp.push_back(var_bound);
  }
  rows.push_back({{mt, 1.0}});
  c_lp.push_back(1.0);
  p.c_lp =
      Eigen::Map<Vector>(c_lp.data(), static_cast<Eigen::Index>(c_lp.size()));
  p.lp_rows = std::move(rows);
  p.lp_cols.resize(p.m);
  for (int r = 0; r < p.n_lp(); ++r)
    for (const auto& [i, coef] : p.lp_rows[r]) p.lp_cols[i].push_back({r, coef});
  p.b = Vector::Zero(p.m);
  p.b[mt] = 1.0;

  // Infeasible start on the central ray.
  double scale = 1.0;
  for (const Matrix& c : p.c_psd)
    scale = std::max(scale, c.cwiseAbs().maxCoeff());
  scale = std::max(scale, p.c_lp.cwiseAbs().maxCoeff());
  const double init = std::min(10.0 * std::sqrt(scale), 1e4);
  std::vector<Matrix> X, Z;
  for (int b = 0; b < p.n_psd(); ++b) {
    X.push_back(init * Matrix::Identity(p.dim[b], p.dim[b]));
    Z.push_back(init * Matrix::Identity(p.dim[b], p.dim[b]));
  }
  Vector x_lp = init * Vector::Ones(p.n_lp());
  Vector z_lp = init * Vector::Ones(p.n_lp());
  Vector y = Vector::Zero(p.m);

  double n_total = p.n_lp();
  for (int d : p.dim) n_total += d;
  const double b_scale = 1.0 + p.b.norm();
  double c_scale = 1.0 + p.c_lp.norm();
  for (const Matrix& c : p.c_psd) c_scale += c.norm();

  IpmResult res;
  const int nb = p.n_psd();
  std::vector<Matrix> zinv(nb), rd(nb);

  for (int iter = 0;; ++iter) {
    double gap = x_lp.dot(z_lp);
    for (int b = 0; b < nb; ++b) gap += X[b].cwiseProduct(Z[b]).sum();
    const double mu = gap / n_total;

    for (int b = 0; b < nb; ++b) rd[b] = p.c_psd[b] - Z[b];
    Vector rd_lp = p.c_lp - z_lp;
    for (int i = 0; i < p.m; ++i) {
      if (y[i] == 0.0) continue;
      for (const auto& [b, a] : p.a_psd[i]) rd[b] -= y[i] * a;
      for (const auto& [r, coef] : p.lp_cols[i]) rd_lp[r] -= y[i] * coef;
    }
    Vector rp = p.b;
    for (int i = 0; i < p.m; ++i) {
      double s = 0.0;
      for (const auto& [b, a] : p.a_psd[i]) s += a.cwiseProduct(X[b]).sum();
      for (const auto& [r, coef] : p.lp_cols[i]) s += coef * x_lp[r];
      rp[i] -= s;
    }
    double rd_norm = rd_lp.norm();
    for (int b = 0; b < nb; ++b) rd_norm = std::hypot(rd_norm, rd[b].norm());

    const double relgap = gap / (1.0 + std::abs(p.b.dot(y)));
    if (relgap < 1e-10 && rp.norm() / b_scale < 1e-10 &&
        rd_norm / c_scale < 1e-10) {
      res.status = IpmResult::Status::Converged;
      res.gap = gap;
      res.iterations = iter;
      break;
    }
    if (iter >= max_iterations) {
      res.status = IpmResult::Status::IterationLimit;
      res.gap = gap;
      res.iterations = iter;
      res.note = "iteration limit";
      break;
    }

    bool fail = false;
    for (int b = 0; b < nb; ++b) {
      Eigen::LLT<Matrix> llt(Z[b]);
      if (llt.info() != Eigen::Success) {
        fail = true;
        break;
      }
      zinv[b] = llt.solve(Matrix::Identity(p.dim[b], p.dim[b]));
    }
    if (fail) {
      res.status = IpmResult::Status::NumericalFailure;
      res.note = "dual slack factorization failed";
      res.iterations = iter;
      break;
    }

    // Schur complement M_ij = tr(A_i Z^-1 A_j X) + LP part.
    Matrix schur = Matrix::Zero(p.m, p.m);
    for (int b = 0; b < nb; ++b) {
      const auto& terms = p.block_terms[b];
      std::vector<Matrix> t(terms.size());
      for (size_t v = 0; v < terms.size(); ++v)
        t[v] = zinv[b] * (*terms[v].second) * X[b];
      for (size_t u = 0; u < terms.size(); ++u)
        for (size_t v = 0; v < terms.size(); ++v)
          schur(terms[u].first, terms[v].first) +=
              terms[u].second->cwiseProduct(t[v]).sum();
    }
    const Vector ratio = x_lp.cwiseQuotient(z_lp);
    for (int r = 0; r < p.n_lp(); ++r)
      for (const auto& [i, ci] : p.lp_rows[r])
        for (const auto& [j, cj] : p.lp_rows[r])
          schur(i, j) += ci * cj * ratio[r];
    schur = 0.5 * (schur + schur.transpose());
    Eigen::LDLT<Matrix> mfac(schur);

    Vector avec = Vector::Zero(p.m);
    Vector dvec = Vector::Zero(p.m);
    for (int i = 0; i < p.m; ++i) {
      for (const auto& [b, a] : p.a_psd[i]) {
        avec[i] += a.cwiseProduct(zinv[b]).sum();
        dvec[i] += a.cwiseProduct(zinv[b] * rd[b] * X[b]).sum();
      }
      for (const auto& [r, coef] : p.lp_cols[i]) {
        avec[i] += coef / z_lp[r];
        dvec[i] += coef * rd_lp[r] * ratio[r];
      }
    }

    // One Newton solve; corr_* carry the Mehrotra second-order term
    // Z^-1 dZ_a dX_a of the corrector pass (empty on the predictor).
    auto directions = [&](double sigma_mu, const std::vector<Matrix>* corr_psd,
                          const Vector* corr_lp) {
      Vector rhs = p.b - sigma_mu * avec + dvec;
      if (corr_psd) {
        for (int i = 0; i < p.m; ++i) {
          double e = 0.0;
          for (const auto& [b, a] : p.a_psd[i])
            e += a.cwiseProduct((*corr_psd)[b]).sum();
          for (const auto& [r, coef] : p.lp_cols[i]) e += coef * (*corr_lp)[r];
          rhs[i] += e;
        }
      }
      Vector dy = mfac.solve(rhs);
      std::vector<Matrix> dz(nb);
      Vector dz_lp = rd_lp;
      for (int b = 0; b < nb; ++b) dz[b] = rd[b];
      for (int i = 0; i < p.m; ++i) {
        if (dy[i] == 0.0) continue;
        for (const auto& [b, a] : p.a_psd[i]) dz[b] -= dy[i] * a;
        for (const auto& [r, coef] : p.lp_cols[i]) dz_lp[r] -= dy[i] * coef;
      }
      std::vector<Matrix> dx(nb);
      for (int b = 0; b < nb; ++b) {
        Matrix v = sigma_mu * zinv[b] - X[b] - zinv[b] * dz[b] * X[b];
        if (corr_psd) v -= (*corr_psd)[b];
        dx[b] = 0.5 * (v + v.transpose());
      }
      Vector dx_lp =
          sigma_mu * z_lp.cwiseInverse() - x_lp - dz_lp.cwiseProduct(ratio);
      if (corr_lp) dx_lp -= *corr_lp;
      return std::make_tuple(std::move(dy), std::move(dx), std::move(dx_lp),
                             std::move(dz), std::move(dz_lp));
    };

    auto [dy_a, dx_a, dxlp_a, dz_a, dzlp_a] = directions(0.0, nullptr, nullptr);
    const double tau = mu > 1e-6 ? 0.95 : 0.98;
    double ap = lp_max_step(x_lp, dxlp_a, tau);
    double ad = lp_max_step(z_lp, dzlp_a, tau);
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, psd_max_step(X[b], dx_a[b], tau));
      ad = std::min(ad, psd_max_step(Z[b], dz_a[b], tau));
    }
    double gap_aff = (x_lp + ap * dxlp_a).dot(z_lp + ad * dzlp_a);
    for (int b = 0; b < nb; ++b)
      gap_aff +=
          (X[b] + ap * dx_a[b]).cwiseProduct(Z[b] + ad * dz_a[b]).sum();
    gap_aff = std::max(gap_aff, 0.0);
    const double sigma = std::clamp(std::pow(gap_aff / gap, 3.0), 1e-8, 1.0);

    std::vector<Matrix> corr_psd(nb);
    for (int b = 0; b < nb; ++b) corr_psd[b] = zinv[b] * dz_a[b] * dx_a[b];
    Vector corr_lp = dzlp_a.cwiseProduct(dxlp_a).cwiseQuotient(z_lp);
    auto [dy, dx, dx_lp, dz, dz_lp] = directions(sigma * mu, &corr_psd, &corr_lp);

    ap = lp_max_step(x_lp, dx_lp, tau);
    ad = lp_max_step(z_lp, dz_lp, tau);
    for (int b = 0; b < nb; ++b) {
      ap = std::min(ap, psd_max_step(X[b], dx[b], tau));
      ad = std::min(ad, psd_max_step(Z[b], dz[b], tau));
    }
    if (!(ap > 1e-14) || !(ad > 1e-14) || !dy.allFinite()) {
      res.status = IpmResult::Status::NumericalFailure;
      res.note = "step collapsed";
      res.iterations = iter;
      break;
    }
    for (int b = 0; b < nb; ++b) {
      X[b] += ap * dx[b];
      Z[b] += ad * dz[b];
    }
    x_lp += ap * dx_lp;
    z_lp += ad * dz_lp;
    y += ad * dy;
  }

  res.margin = y[mt];
  res.y = y.head(lmi.m);
  // Bound-activity check on the box rows.
  for (int r = n_sign; r < p.n_lp() - 1; ++r) {
    double val = p.c_lp[r];
    for (const auto& [i, coef] : p.lp_rows[r]) val -= coef * y[i];
    if (val < 1e-3 * var_bound) res.hit_bound = true;
  }
  return res;
}

}  // namespace pep::detail
