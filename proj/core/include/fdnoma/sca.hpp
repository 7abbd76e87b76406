#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include <Eigen/Core>

#include "fdnoma/interior_point.hpp"
#include "fdnoma/link_model.hpp"
#include "fdnoma/solver_result.hpp"
#include "fdnoma/surrogate.hpp"

namespace fdnoma {

// Suboptimal power allocation by successive convex approximation: each step
// maximizes the concave DC surrogate at the current point over the power caps
// and the linearized rate constraints S_d >= (2^(r_min/w_d) - 1)(N0 + I_d).
//
// Subproblems are solved in normalized coordinates x = p / cap, so gradients,
// multipliers and KKT residuals are in bits per unit of each cap.

struct ScaOptions {
  double tol = 1e-3;
  int max_iterations = 500;
  ScaInit init = ScaInit::TenthOfCap;
  int restarts = 1;  ///< starts in total: configured rule, then the other rule, then random points
  std::uint64_t seed = 0;  ///< keys the random restart points
  InteriorPointOptions inner;
};

ScaOptions sca_options(const SimConfig& cfg, long drop_index = 0);

/// Rate constraint thresholds 2^(r_min/w_d) - 1.
Eigen::VectorXd sinr_thresholds(const LinkModel& model, double r_min);

/// Caps, sum caps and rate constraints as G x <= h over x = p / upper.
LinearInequalities normalized_constraints(const LinkModel& model, double r_min);

/// A power vector strictly inside every cap and rate constraint, if one is
/// found.
std::optional<Eigen::VectorXd> strictly_feasible_point(const LinkModel& model, double r_min);

struct SubproblemResult {
  bool feasible = false;
  Eigen::VectorXd p;
  Eigen::VectorXd x;  ///< normalized powers
  double surrogate_value = 0.0;
  double kkt_residual = 0.0;
  Eigen::VectorXd multipliers;
  LinearInequalities constraints;
  int iterations = 0;
};

/// Maximizes the surrogate over the feasible set. The returned point is
/// strictly feasible; an empty interior is reported as infeasible.
SubproblemResult solve_convex_subproblem(const DcSurrogate& surrogate, const LinkModel& model,
                                         double r_min, const InteriorPointOptions& inner = {});

/// Starting point per ScaOptions::init; nullopt when no feasible point exists.
std::optional<Eigen::VectorXd> sca_initial_point(const LinkModel& model, double r_min, ScaInit init);

SolverResult solve_sca(const LinkModel& model, double r_min, const ScaOptions& options,
                       const std::optional<Eigen::VectorXd>& p0 = std::nullopt);
SolverResult solve_sca(const LinkModel& model, const SimConfig& cfg, long drop_index = 0);

/// `iter,objective,step_norm,kkt_residual`
void write_sca_trace_csv(std::ostream& out, const SolverResult& result);

}  // namespace fdnoma
