#pragma once

#include "block_lmi.hpp"

namespace pep::detail {

/// Douglas-Rachford feasibility pass over the block LMI, used as the bundled
/// fallback backend and for solver-independence cross checks.
struct DrResult {
  enum class Status { FoundFeasible, Diverging, IterationLimit };
  Status status = Status::IterationLimit;
  Vector y;
  double margin = -std::numeric_limits<double>::infinity();
  int iterations = 0;
};

DrResult dr_feasibility(const BlockLmi& lmi, double tol, int max_iterations);

}  // namespace pep::detail
