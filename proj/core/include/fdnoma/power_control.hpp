#pragma once

#include <Eigen/Core>

#include "fdnoma/link_model.hpp"

namespace fdnoma {

enum class Verdict { Feasible, Infeasible, Undecided };

struct FeasibilityResult {
  Verdict verdict = Verdict::Infeasible;
  Eigen::VectorXd p;  ///< componentwise-minimal power vector meeting the targets (when feasible)
  int iterations = 0;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

struct OracleOptions {
  int max_iterations = 100000;
  double rel_change_tol = 1e-9;
  int iterations_before_solve = 4;  ///< plain iterations before the direct fixed-point solve
};

/// Decides whether per-user SINR targets are jointly achievable within the
/// model's power limits.
///
/// The standard power-control map T(p)_d = gamma_d (N0 + I_d(p)) / a_d is
/// iterated from p = 0. Iterates increase monotonically toward the
/// componentwise-minimal solution, so the instance is infeasible as soon as
/// an iterate breaks a cap. Because T is affine, its limit is also the
/// solution of (I - diag(gamma/a) B) p = gamma N0 / a; after a few iterations
/// that system is solved directly, and a non-negative solution is the limit
/// (a positive fixed point exists only when the spectral radius is below one).
/// If the direct solve is unusable the iteration simply continues;
/// exhausting max_iterations yields Verdict::Undecided.
FeasibilityResult sinr_targets_feasible(const LinkModel& model, const Eigen::VectorXd& gamma,
                                        const OracleOptions& options = {});

}  // namespace fdnoma
