#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "fdnoma/link_model.hpp"
#include "fdnoma/power_control.hpp"
#include "fdnoma/solver_result.hpp"

namespace fdnoma {

// Global power allocation by polyblock outer approximation.
//
// The problem is solved in z-space, z_d = 1 + SINR_d, with the increasing
// objective Phi(z) = sum_d w_d log2 z_d over the normal set
//   Z = { z : z_lb <= z <= 1 + SINR(p) for some feasible p },
// where z_lb,d = 2^(r_min / w_d). A polyblock (union of boxes [z_lb, v]) that
// contains Z is refined until its best vertex is within tol of the incumbent.

struct PolyblockOptions {
  double tol = 1e-3;
  long vertex_budget = 200000;  ///< cap on live vertices and on iterations
  double lambda_tol = 1e-6;     ///< relative bisection tolerance along the ray
  /// Rays start at z_lb - anchor_offset (clipped at 0) instead of z_lb, with
  /// oracle targets clipped at z_lb. 0 anchors exactly at z_lb.
  double anchor_offset = 1.0;
  bool record_trace = true;
};

PolyblockOptions polyblock_options(const SimConfig& cfg);

struct PolyblockVertex {
  double phi = 0.0;
  std::vector<double> z;
};

/// Snapshot of the solver state (exposed for invariant checks).
struct PolyblockState {
  std::vector<PolyblockVertex> vertices;
  double cbv = 0.0;
  Eigen::VectorXd best_p;
  Eigen::VectorXd z_lb;
  Eigen::VectorXd z_ub;
};

/// Result of a ray search from an anchor toward a vertex.
struct BoundaryPoint {
  double lambda = 0.0;        ///< largest feasible ray parameter found
  double lambda_upper = 1.0;  ///< smallest parameter known infeasible (== lambda when v is feasible)
  Eigen::VectorXd y;          ///< max(ray(lambda), z_lb), feasible
  Eigen::VectorXd y_upper;    ///< ray(lambda_upper), on or above the boundary (not clipped)
  Eigen::VectorXd p;          ///< oracle power vector achieving y
  int oracle_calls = 0;
};

Eigen::VectorXd polyblock_lower_corner(const LinkModel& model, double r_min);

/// 1 + SINR_d with own power at its cap and every other power zero.
Eigen::VectorXd polyblock_upper_corner(const LinkModel& model);

double weighted_log_utility(const LinkModel& model, const Eigen::VectorXd& z);

/// Bisection on ray(lambda) = anchor + lambda (v - anchor), lambda in [0, 1],
/// with the fixed-point oracle deciding membership (targets
/// max(ray, z_lb) - 1). Requires anchor <= z_lb and z_lb feasible; `p_lb` is
/// the oracle point for z_lb.
BoundaryPoint project_to_boundary(const LinkModel& model, const Eigen::VectorXd& anchor,
                                  const Eigen::VectorXd& z_lb, const Eigen::VectorXd& p_lb,
                                  const Eigen::VectorXd& v, double lambda_tol = 1e-6);
/// Ray anchored at z_lb itself.
BoundaryPoint project_to_boundary(const LinkModel& model, const Eigen::VectorXd& z_lb,
                                  const Eigen::VectorXd& p_lb, const Eigen::VectorXd& v,
                                  double lambda_tol = 1e-6);
Eigen::VectorXd polyblock_anchor(const Eigen::VectorXd& z_lb, double anchor_offset);

/// Optional `final_state` receives the vertex set and incumbent at exit.
SolverResult solve_polyblock(const LinkModel& model, double r_min, const PolyblockOptions& options,
                             PolyblockState* final_state = nullptr);
SolverResult solve_polyblock(const LinkModel& model, const SimConfig& cfg);

/// `iter,upper_bound,cbv,n_vertices`
void write_polyblock_trace_csv(std::ostream& out, const SolverResult& result);

}  // namespace fdnoma
