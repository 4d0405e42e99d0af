#pragma once

#include "block_lmi.hpp"

#include <string>

namespace pep::detail {

/// Margin maximization over the block LMI: maximize t subject to
///   psd_block_b(y) - t I >= 0,  lp_row_r(y) >= 0,  |w| and |P| boxed, t <= 1.
/// Feasibility of the original LMI corresponds to t* > 0.
struct IpmResult {
  enum class Status { Converged, IterationLimit, NumericalFailure };
  Status status = Status::NumericalFailure;
  Vector y;           // solution in BlockLmi coordinates (margin dropped)
  double margin = 0.0;  // optimal t
  double gap = 0.0;     // final duality gap
  int iterations = 0;
  bool hit_bound = false;  // some boxed variable ended near its bound
  std::string note;
};

IpmResult ipm_max_margin(const BlockLmi& lmi, double var_bound,
                         int max_iterations);

}  // namespace pep::detail
