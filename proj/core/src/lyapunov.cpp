#include "saddlepep/lyapunov.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace pep {

namespace {

Matrix lift_block(const Eigen::Matrix4d& k, const Eigen::RowVectorXd& pi,
                  const Eigen::RowVectorXd& pj, const Eigen::RowVectorXd& gi,
                  const Eigen::RowVectorXd& gj) {
  const int n = static_cast<int>(pi.size());
  Matrix v(4, n);
  v.row(0) = pi;
  v.row(1) = pj;
  v.row(2) = gi;
  v.row(3) = gj;
  Matrix lifted = v.transpose() * k * v;
  return 0.5 * (lifted + lifted.transpose());
}

// Builds the lifted constraints of one stage and assigns multiplier
// variables, sharing one variable per unordered pair for symmetric kernels.
void build_stage(LyapStage& stage, const KernelSet& ks) {
  const SymbolicTrace& t = stage.trace;
  std::map<std::string, int> var_of;
  int next = 0;
  for (const ConstraintKernel& k : ks.kernels) {
    for (const std::string& i : t.labels) {
      for (const std::string& j : t.labels) {
        if (i == j) continue;
        LiftedConstraint lc = lift_kernel(k, t, i, j);
        std::string key = to_string(k.id) + ":";
        if (ks.rule.is_symmetric(k.id))
          key += i < j ? i + "," + j : j + "," + i;
        else
          key += i + "," + j;
        auto [it, inserted] = var_of.try_emplace(key, next);
        if (inserted) ++next;
        lc.var = it->second;
        stage.constraints.push_back(std::move(lc));
      }
    }
  }
  stage.n_vars = next;
}

Matrix accumulate(Matrix out, const std::vector<LiftedConstraint>& cs,
                  const std::vector<double>& w, bool x_side, double sign) {
  for (const LiftedConstraint& c : cs) {
    if (c.var < 0 || c.var >= static_cast<int>(w.size()))
      throw std::invalid_argument("LyapSdp: multiplier vector too short");
    out += sign * w[c.var] * (x_side ? c.A : c.B);
  }
  return out;
}

}  // namespace

LiftedConstraint lift_kernel(const ConstraintKernel& kernel,
                             const SymbolicTrace& trace, const std::string& i,
                             const std::string& j) {
  if (i == j) throw std::invalid_argument("lift_kernel: need i != j");
  const TracePoint& pi = trace.at(i);
  const TracePoint& pj = trace.at(j);
  LiftedConstraint lc;
  lc.c = kernel.id;
  lc.i = i;
  lc.j = j;
  lc.A = lift_block(kernel.A, pi.x, pj.x, pi.gx, pj.gx);
  lc.B = lift_block(kernel.B, pi.y, pj.y, pi.gy, pj.gy);
  lc.m = pi.f - pj.f;
  return lc;
}

Matrix LyapunovBlocks::p0_x(const Matrix& Px) const {
  return s0x.transpose() * Px * s0x;
}
Matrix LyapunovBlocks::p0_y(const Matrix& Py) const {
  return s0y.transpose() * Py * s0y;
}
Matrix LyapunovBlocks::p1_x(const Matrix& Px) const {
  return s1x_cur.transpose() * Px * s1x_cur -
         rho2 * s1x_prev.transpose() * Px * s1x_prev;
}
Matrix LyapunovBlocks::p1_y(const Matrix& Py) const {
  return s1y_cur.transpose() * Py * s1y_cur -
         rho2 * s1y_prev.transpose() * Py * s1y_prev;
}

LyapunovBlocks lyapunov_blocks(const SymbolicTrace& stage0,
                               const SymbolicTrace& stage1, double rho2) {
  if (!(rho2 >= 0.0))
    throw std::invalid_argument("lyapunov_blocks: rho2 must be >= 0");
  LyapunovBlocks b;
  b.rho2 = rho2;
  b.s0x = stage0.state_x(0);
  b.s0y = stage0.state_y(0);
  b.s1x_cur = stage1.state_x(1);
  b.s1y_cur = stage1.state_y(1);
  b.s1x_prev = stage1.state_x(0);
  b.s1y_prev = stage1.state_y(0);
  return b;
}

Matrix LyapSdp::block0_x(const Matrix& Px,
                         const std::vector<double>& lambda) const {
  const Matrix base = stage0.state_x_cur.transpose() * Px * stage0.state_x_cur -
                      stage0.anchor_x;
  return accumulate(base, stage0.constraints, lambda, true, -1.0);
}
Matrix LyapSdp::block0_y(const Matrix& Py,
                         const std::vector<double>& lambda) const {
  const Matrix base = stage0.state_y_cur.transpose() * Py * stage0.state_y_cur -
                      stage0.anchor_y;
  return accumulate(base, stage0.constraints, lambda, false, -1.0);
}
Matrix LyapSdp::block1_x(const Matrix& Px, const std::vector<double>& nu) const {
  const Matrix p1 = stage1.state_x_cur.transpose() * Px * stage1.state_x_cur -
                    rho2 * stage1.state_x_prev.transpose() * Px *
                        stage1.state_x_prev;
  return accumulate(-p1, stage1.constraints, nu, true, -1.0);
}
Matrix LyapSdp::block1_y(const Matrix& Py, const std::vector<double>& nu) const {
  const Matrix p1 = stage1.state_y_cur.transpose() * Py * stage1.state_y_cur -
                    rho2 * stage1.state_y_prev.transpose() * Py *
                        stage1.state_y_prev;
  return accumulate(-p1, stage1.constraints, nu, false, -1.0);
}

Vector LyapSdp::equality0(const std::vector<double>& lambda) const {
  Vector r = Vector::Zero(stage0.trace.n_f);
  for (const LiftedConstraint& c : stage0.constraints)
    r += lambda[c.var] * c.m.transpose();
  return r;
}
Vector LyapSdp::equality1(const std::vector<double>& nu) const {
  Vector r = Vector::Zero(stage1.trace.n_f);
  for (const LiftedConstraint& c : stage1.constraints)
    r += nu[c.var] * c.m.transpose();
  return r;
}

LyapSdp assemble(const MethodSpec& spec, ConstraintSetId set_id, double kappa,
                 double rho2) {
  if (!(kappa > 1.0)) throw std::invalid_argument("assemble: kappa must be > 1");
  if (!(rho2 >= 0.0)) throw std::invalid_argument("assemble: rho2 must be >= 0");
  const KernelSet ks = kernel_matrices(set_id, 1.0 / kappa);

  LyapSdp sdp;
  sdp.spec = spec;
  sdp.set_id = set_id;
  sdp.rule = ks.rule;
  sdp.kappa = kappa;
  sdp.rho2 = rho2;

  sdp.stage0.trace = method_trace(spec, 0);
  sdp.stage1.trace = method_trace(spec, 1);
  sdp.p = sdp.stage0.trace.state_dim;
  build_stage(sdp.stage0, ks);
  build_stage(sdp.stage1, ks);

  const LyapunovBlocks blocks =
      lyapunov_blocks(sdp.stage0.trace, sdp.stage1.trace, rho2);
  sdp.stage0.state_x_cur = blocks.s0x;
  sdp.stage0.state_y_cur = blocks.s0y;
  sdp.stage0.state_x_prev = blocks.s0x;
  sdp.stage0.state_y_prev = blocks.s0y;
  sdp.stage1.state_x_cur = blocks.s1x_cur;
  sdp.stage1.state_y_cur = blocks.s1y_cur;
  sdp.stage1.state_x_prev = blocks.s1x_prev;
  sdp.stage1.state_y_prev = blocks.s1y_prev;

  const TracePoint& p0 = sdp.stage0.trace.at("0");
  sdp.stage0.anchor_x = p0.x.transpose() * p0.x;
  sdp.stage0.anchor_y = p0.y.transpose() * p0.y;
  sdp.stage1.anchor_x = Matrix::Zero(sdp.stage1.trace.n, sdp.stage1.trace.n);
  sdp.stage1.anchor_y = Matrix::Zero(sdp.stage1.trace.n, sdp.stage1.trace.n);
  return sdp;
}

}  // namespace pep
