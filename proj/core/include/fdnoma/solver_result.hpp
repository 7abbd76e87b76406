#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fdnoma/power_allocation.hpp"

namespace fdnoma {

enum class SolverStatus {
  Converged,
  BudgetExhausted,  ///< polyblock vertex/iteration budget hit; best point so far returned
  IterationLimit,   ///< SCA stopped at its iteration cap
  Infeasible,       ///< the rate demands cannot be met
};

std::string_view status_name(SolverStatus status);

/// One row of a solver trace. Polyblock fills upper_bound/objective(=cbv)/
/// n_vertices; SCA fills objective/step_norm/kkt_residual.
struct TraceEntry {
  long iteration = 0;
  double upper_bound = std::numeric_limits<double>::quiet_NaN();
  double objective = 0.0;
  long n_vertices = 0;
  double step_norm = std::numeric_limits<double>::quiet_NaN();
  double kkt_residual = std::numeric_limits<double>::quiet_NaN();
};

struct SolverResult {
  PowerAllocation p;
  double objective_bps_hz = 0.0;
  bool feasible = false;
  long iterations = 0;
  SolverStatus status = SolverStatus::Infeasible;
  double upper_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<TraceEntry> trace;
};

}  // namespace fdnoma
