#pragma once

#include "saddlepep/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace pep {

enum class Method { SimGda, AltGda };

struct MethodSpec {
  Method method = Method::SimGda;
  double eta = 0.1;
};

/// Symbolic coordinates of one queried point: row vectors of coefficients
/// over the trace's x-basis, y-basis and function-value basis.
struct TracePoint {
  Eigen::RowVectorXd x;
  Eigen::RowVectorXd y;
  Eigen::RowVectorXd gx;
  Eigen::RowVectorXd gy;
  Eigen::RowVectorXd f;
};

/// Basis-vector algebra for K in {0, 1} steps of a method. The x-basis is
/// [x_0, gx at the queried points...] and likewise for y; the saddle point
/// "*" is pinned at the origin with zero operator and function value, so its
/// coefficient rows are all zero. For Alt-GDA the intermediate points
/// (x_{k+1}, y_k) are queried points of their own ("h" after step 0, "1h"
/// after step 1).
struct SymbolicTrace {
  Method method = Method::SimGda;
  double eta = 0.0;
  int K = 0;
  int n = 0;        // x-basis dim == y-basis dim
  int n_f = 0;      // function-value basis dim
  int state_dim = 0;  // Lyapunov state length (2 for Sim, 3 for Alt)
  std::vector<std::string> labels;  // queried points then "*"
  std::map<std::string, TracePoint> points;

  const TracePoint& at(const std::string& label) const;

  /// Rows selecting the Lyapunov state of iterate `step` (0 or K) in this
  /// trace's basis: [x_k; gx(z_k)] for Sim-GDA and
  /// [x_k; gx(x_k, y_k); gx(x_{k+1}, y_k)] for Alt-GDA.
  Matrix state_x(int step) const;
  Matrix state_y(int step) const;
};

/// Builds the symbolic trace of `spec` run for K in {0, 1} steps.
SymbolicTrace method_trace(const MethodSpec& spec, int K);

std::string to_string(Method m);

}  // namespace pep
