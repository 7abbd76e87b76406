#pragma once

#include <functional>

#include <Eigen/Core>

namespace fdnoma {

/// Smooth concave objective with analytic derivatives.
struct ConcaveObjective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;  ///< negative semidefinite
};

/// Polyhedron { x : G x <= h }.
struct LinearInequalities {
  Eigen::MatrixXd G;
  Eigen::VectorXd h;

  Eigen::VectorXd slack(const Eigen::VectorXd& x) const { return h - G * x; }
};

struct InteriorPointOptions {
  double gap_tol = 1e-11;   ///< stop when s'lambda falls below this
  double dual_tol = 1e-10;  ///< and the stationarity residual below this
  double mu = 10.0;
  int max_iterations = 300;
};

struct InteriorPointResult {
  Eigen::VectorXd x;
  Eigen::VectorXd multipliers;  ///< one per inequality row
  double value = 0.0;
  double kkt_residual = 0.0;  ///< max(|grad f - G' lambda|_inf, max_i lambda_i s_i)
  int iterations = 0;
  bool converged = false;
};

/// KKT residual of a primal-dual pair for max f s.t. G x <= h.
double kkt_residual(const Eigen::VectorXd& gradient, const LinearInequalities& cons,
                    const Eigen::VectorXd& x, const Eigen::VectorXd& multipliers);

/// Primal-dual interior-point method for max f(x) s.t. G x <= h. `x0` must be
/// strictly feasible. Dense and meant for small problems (tens of variables).
InteriorPointResult maximize_concave(const ConcaveObjective& f, const LinearInequalities& cons,
                                     const Eigen::VectorXd& x0,
                                     const InteriorPointOptions& options = {});

}  // namespace fdnoma
