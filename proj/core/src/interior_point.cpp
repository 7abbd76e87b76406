#include "fdnoma/interior_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace fdnoma {

double kkt_residual(const Eigen::VectorXd& gradient, const LinearInequalities& cons,
                    const Eigen::VectorXd& x, const Eigen::VectorXd& multipliers) {
  const Eigen::VectorXd stationarity = gradient - cons.G.transpose() * multipliers;
  const Eigen::VectorXd s = cons.slack(x);
  double complementarity = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    complementarity = std::max(complementarity, std::abs(multipliers[i] * s[i]));
  }
  const double primal = std::max(0.0, -s.minCoeff());
  const double dual = std::max(0.0, -multipliers.minCoeff());
  return std::max({stationarity.lpNorm<Eigen::Infinity>(), complementarity, primal, dual});
}

InteriorPointResult maximize_concave(const ConcaveObjective& f, const LinearInequalities& cons,
                                     const Eigen::VectorXd& x0,
                                     const InteriorPointOptions& options) {
  const auto m = cons.G.rows();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd s = cons.slack(x);
  if ((s.array() <= 0.0).any()) {
    throw std::invalid_argument("maximize_concave: starting point is not strictly feasible");
  }
  Eigen::VectorXd lambda = s.cwiseInverse();

  // Residuals in minimization form (f0 = -f).
  auto residuals = [&](const Eigen::VectorXd& px, const Eigen::VectorXd& pl,
                       const Eigen::VectorXd& ps, double t, Eigen::VectorXd& r_dual,
                       Eigen::VectorXd& r_cent) {
    r_dual = -f.gradient(px) + cons.G.transpose() * pl;
    r_cent = pl.cwiseProduct(ps).array() - 1.0 / t;
    return std::sqrt(r_dual.squaredNorm() + r_cent.squaredNorm());
  };

  InteriorPointResult result;
  Eigen::VectorXd r_dual;
  Eigen::VectorXd r_cent;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double gap = s.dot(lambda);
    const double t = options.mu * static_cast<double>(m) / gap;
    const double norm0 = residuals(x, lambda, s, t, r_dual, r_cent);
    const Eigen::VectorXd dual_res = -r_dual;  // grad f - G' lambda
    if (gap <= options.gap_tol && dual_res.lpNorm<Eigen::Infinity>() <= options.dual_tol) {
      result.converged = true;
      break;
    }
    result.iterations = it + 1;

    const Eigen::VectorXd d = lambda.cwiseQuotient(s);
    Eigen::MatrixXd system = -f.hessian(x);
    system.noalias() += cons.G.transpose() * d.asDiagonal() * cons.G;
    const Eigen::VectorXd rhs = -r_dual + cons.G.transpose() * r_cent.cwiseQuotient(s);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
    const Eigen::VectorXd dx = ldlt.solve(rhs);
    if (!dx.allFinite()) break;
    const Eigen::VectorXd gdx = cons.G * dx;
    const Eigen::VectorXd dlambda = (-r_cent).cwiseQuotient(s) + d.cwiseProduct(gdx);

    double step = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (dlambda[i] < 0.0) step = std::min(step, -lambda[i] / dlambda[i]);
    }
    step *= 0.99;
    Eigen::VectorXd x_new;
    Eigen::VectorXd l_new;
    Eigen::VectorXd s_new;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls, step *= 0.5) {
      x_new = x + step * dx;
      s_new = cons.slack(x_new);
      if ((s_new.array() <= 0.0).any()) continue;
      l_new = lambda + step * dlambda;
      Eigen::VectorXd rd;
      Eigen::VectorXd rc;
      if (residuals(x_new, l_new, s_new, t, rd, rc) <= (1.0 - 0.01 * step) * norm0) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    x = std::move(x_new);
    lambda = std::move(l_new);
    s = std::move(s_new);
  }

  result.x = x;
  result.multipliers = lambda;
  result.value = f.value(x);
  result.kkt_residual = kkt_residual(f.gradient(x), cons, x, lambda);
  return result;
}

}  // namespace fdnoma
