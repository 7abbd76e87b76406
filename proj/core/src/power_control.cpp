#include "fdnoma/power_control.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace fdnoma {

namespace {

constexpr double kCapSlack = 1e-12;

bool within_caps(const PowerLimits& limits, const Eigen::VectorXd& p) {
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p[j] > limits.upper[j] * (1.0 + kCapSlack)) return false;
  }
  for (const auto& g : limits.groups) {
    double sum = 0.0;
    for (int j : g.members) sum += p[j];
    if (sum > g.cap * (1.0 + kCapSlack)) return false;
  }
  return true;
}

}  // namespace

FeasibilityResult sinr_targets_feasible(const LinkModel& model, const Eigen::VectorXd& gamma,
                                        const OracleOptions& options) {
  const int n = model.n_users();
  if (gamma.size() != n) throw std::invalid_argument("sinr_targets_feasible: dimension mismatch");
  if ((gamma.array() < 0.0).any() || !gamma.allFinite()) {
    throw std::invalid_argument("sinr_targets_feasible: targets must be finite and non-negative");
  }

  FeasibilityResult result;
  const Eigen::VectorXd scale = gamma.cwiseQuotient(model.signal_gain);  // gamma_d / a_d
  const Eigen::VectorXd offset = scale * model.noise_w;

  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  auto step = [&](const Eigen::VectorXd& current) -> Eigen::VectorXd {
    return offset + scale.cwiseProduct(model.coupling * current);
  };

  auto finish = [&](Verdict verdict, Eigen::VectorXd power) {
    result.verdict = verdict;
    if (verdict == Verdict::Feasible) result.p = std::move(power);
    return result;
  };

  bool solve_attempted = false;
  for (int it = 0; it < options.max_iterations; ++it) {
    Eigen::VectorXd next = step(p);
    ++result.iterations;
    if (!within_caps(model.limits, next)) return finish(Verdict::Infeasible, {});
    const double change = (next - p).lpNorm<Eigen::Infinity>();
    const double size = next.lpNorm<Eigen::Infinity>();
    p = std::move(next);
    if (change <= options.rel_change_tol * size) return finish(Verdict::Feasible, p);

    if (!solve_attempted && result.iterations >= options.iterations_before_solve) {
      solve_attempted = true;
      Eigen::MatrixXd system = -(scale.asDiagonal() * model.coupling);
      system.diagonal().array() += 1.0;
      const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
      const Eigen::VectorXd fixed = lu.solve(offset);
      if (!fixed.allFinite()) continue;
      const double residual = (system * fixed - offset).lpNorm<Eigen::Infinity>();
      const double magnitude = offset.lpNorm<Eigen::Infinity>() + fixed.lpNorm<Eigen::Infinity>();
      if (residual > 1e-9 * magnitude) continue;
      // Iterates stay below the minimal fixed point; a candidate below the
      // current iterate (in particular a negative one) means none exists.
      const double floor_tol = 1e-9 * fixed.lpNorm<Eigen::Infinity>();
      if (((fixed - p).array() < -floor_tol).any()) return finish(Verdict::Infeasible, {});
      const Eigen::VectorXd limit = fixed.cwiseMax(p);
      if (!within_caps(model.limits, limit)) return finish(Verdict::Infeasible, {});
      return finish(Verdict::Feasible, limit);
    }
  }
  return finish(Verdict::Undecided, {});
}

}  // namespace fdnoma
