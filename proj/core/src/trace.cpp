#include "saddlepep/trace.hpp"

#include <stdexcept>

namespace pep {

namespace {

Eigen::RowVectorXd unit(int n, int i) {
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(n);
  v[i] = 1.0;
  return v;
}

Eigen::RowVectorXd zeros(int n) { return Eigen::RowVectorXd::Zero(n); }

}  // namespace

const TracePoint& SymbolicTrace::at(const std::string& label) const {
  auto it = points.find(label);
  if (it == points.end())
    throw std::out_of_range("SymbolicTrace: unknown point label '" + label + "'");
  return it->second;
}

Matrix SymbolicTrace::state_x(int step) const {
  if (step != 0 && step != K)
    throw std::invalid_argument("SymbolicTrace::state_x: step not traced");
  Matrix s(state_dim, n);
  if (method == Method::SimGda) {
    const TracePoint& p = at(step == 0 ? "0" : "1");
    s.row(0) = p.x;
    s.row(1) = p.gx;
  } else {
    const TracePoint& base = at(step == 0 ? "0" : "1");
    const TracePoint& half = at(step == 0 ? "h" : "1h");
    s.row(0) = base.x;
    s.row(1) = base.gx;
    s.row(2) = half.gx;
  }
  return s;
}

Matrix SymbolicTrace::state_y(int step) const {
  if (step != 0 && step != K)
    throw std::invalid_argument("SymbolicTrace::state_y: step not traced");
  Matrix s(state_dim, n);
  if (method == Method::SimGda) {
    const TracePoint& p = at(step == 0 ? "0" : "1");
    s.row(0) = p.y;
    s.row(1) = p.gy;
  } else {
    const TracePoint& base = at(step == 0 ? "0" : "1");
    const TracePoint& half = at(step == 0 ? "h" : "1h");
    s.row(0) = base.y;
    s.row(1) = base.gy;
    s.row(2) = half.gy;
  }
  return s;
}

SymbolicTrace method_trace(const MethodSpec& spec, int K) {
  if (!(spec.eta > 0.0))
    throw std::invalid_argument("method_trace: eta must be > 0");
  if (K != 0 && K != 1)
    throw std::invalid_argument(
        "method_trace: only K in {0, 1} is supported (two-stage Lyapunov "
        "certification)");

  SymbolicTrace t;
  t.method = spec.method;
  t.eta = spec.eta;
  t.K = K;
  const double eta = spec.eta;

  if (spec.method == Method::SimGda) {
    t.state_dim = 2;
    if (K == 0) {
      t.n = 2;  // [x_0, gx_0]
      t.n_f = 1;
      t.labels = {"0", "*"};
      t.points["0"] = {unit(2, 0), unit(2, 0), unit(2, 1), unit(2, 1),
                       unit(1, 0)};
    } else {
      t.n = 3;  // [x_0, gx_0, gx_1]
      t.n_f = 2;
      t.labels = {"0", "1", "*"};
      t.points["0"] = {unit(3, 0), unit(3, 0), unit(3, 1), unit(3, 1),
                       unit(2, 0)};
      TracePoint p1;
      p1.x = unit(3, 0) - eta * unit(3, 1);  // x_1 = x_0 - eta gx_0
      p1.y = unit(3, 0) + eta * unit(3, 1);  // y_1 = y_0 + eta gy_0
      p1.gx = unit(3, 2);
      p1.gy = unit(3, 2);
      p1.f = unit(2, 1);
      t.points["1"] = p1;
    }
  } else {
    t.state_dim = 3;
    if (K == 0) {
      // Queried points: z_0 = (x_0, y_0) and z_h = (x_1, y_0); the state at
      // iterate 0 already involves the gradient at the intermediate point.
      t.n = 3;  // [x_0, gx_0, gx_h]
      t.n_f = 2;
      t.labels = {"0", "h", "*"};
      t.points["0"] = {unit(3, 0), unit(3, 0), unit(3, 1), unit(3, 1),
                       unit(2, 0)};
      TracePoint ph;
      ph.x = unit(3, 0) - eta * unit(3, 1);  // x_1 = x_0 - eta gx(z_0)
      ph.y = unit(3, 0);                     // y stays at y_0
      ph.gx = unit(3, 2);
      ph.gy = unit(3, 2);
      ph.f = unit(2, 1);
      t.points["h"] = ph;
    } else {
      // Queried points: z_0, z_h = (x_1, y_0), z_1 = (x_1, y_1) and
      // z_1h = (x_2, y_1), the latter needed by the state of iterate 1.
      t.n = 5;  // [x_0, gx_0, gx_h, gx_1, gx_1h]
      t.n_f = 4;
      t.labels = {"0", "h", "1", "1h", "*"};
      t.points["0"] = {unit(5, 0), unit(5, 0), unit(5, 1), unit(5, 1),
                       unit(4, 0)};
      const Eigen::RowVectorXd x1 = unit(5, 0) - eta * unit(5, 1);
      const Eigen::RowVectorXd y1 = unit(5, 0) + eta * unit(5, 2);  // uses gy_h
      const Eigen::RowVectorXd x2 = x1 - eta * unit(5, 3);          // uses gx_1
      t.points["h"] = {x1, unit(5, 0), unit(5, 2), unit(5, 2), unit(4, 1)};
      t.points["1"] = {x1, y1, unit(5, 3), unit(5, 3), unit(4, 2)};
      t.points["1h"] = {x2, y1, unit(5, 4), unit(5, 4), unit(4, 3)};
    }
  }

  t.points["*"] = {zeros(t.n), zeros(t.n), zeros(t.n), zeros(t.n),
                   zeros(t.n_f)};
  return t;
}

std::string to_string(Method m) {
  return m == Method::SimGda ? "sim" : "alt";
}

}  // namespace pep
