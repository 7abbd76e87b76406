#include "fdnoma/grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fdnoma/sinr.hpp"

namespace fdnoma {

std::vector<double> grid_levels(double cap, int levels) {
  if (levels < 1) throw std::invalid_argument("grid levels must be positive");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(levels) + 2);
  out.push_back(0.0);
  for (int k = levels; k >= 0; --k) out.push_back(cap * std::pow(10.0, -4.0 * k / levels));
  return out;
}

Eigen::VectorXd snap_down_to_grid(const LinkModel& model, const Eigen::VectorXd& p, int levels) {
  Eigen::VectorXd out(p.size());
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const std::vector<double> grid = grid_levels(model.limits.upper[j], levels);
    auto it = std::upper_bound(grid.begin(), grid.end(), p[j]);
    out[j] = it == grid.begin() ? 0.0 : *std::prev(it);
  }
  return out;
}

SolverResult grid_search(const LinkModel& model, double r_min, int levels) {
  const int n = model.n_users();
  if (n > kGridSearchMaxVariables) {
    throw std::invalid_argument("grid search limited to " +
                                std::to_string(kGridSearchMaxVariables) + " variables, got " +
                                std::to_string(n));
  }
  std::vector<std::vector<double>> grids;
  for (int j = 0; j < n; ++j) grids.push_back(grid_levels(model.limits.upper[j], levels));

  Eigen::VectorXd theta(n);
  for (int d = 0; d < n; ++d) theta[d] = std::exp2(r_min / model.weight[d]) - 1.0;

  SolverResult result;
  result.p = PowerAllocation::zeros(model.n_dl, model.n_ul);
  result.status = SolverStatus::Infeasible;

  std::vector<std::size_t> index(static_cast<std::size_t>(n), 0);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd best;
  double best_value = -1.0;
  long evaluated = 0;
  for (;;) {
    for (int j = 0; j < n; ++j) p[j] = grids[j][index[j]];
    bool inside = true;
    for (const auto& g : model.limits.groups) {
      double total = 0.0;
      for (int j : g.members) total += p[j];
      if (total > g.cap * (1.0 + 1e-12)) inside = false;
    }
    if (inside) {
      const Eigen::VectorXd sinr = sinr_vector(model, p);
      if (((sinr - theta).array() >= 0.0).all()) {
        const double value = objective_value(model, p);
        ++evaluated;
        if (value > best_value) {
          best_value = value;
          best = p;
        }
      }
    }
    int j = 0;
    while (j < n && ++index[j] == grids[j].size()) index[j++] = 0;
    if (j == n) break;
  }
  result.iterations = evaluated;
  if (best_value >= 0.0) {
    result.feasible = true;
    result.status = SolverStatus::Converged;
    result.p = PowerAllocation::from_flat(best, model.n_dl);
    result.objective_bps_hz = best_value;
  }
  return result;
}

SolverResult grid_search(const ChannelSet& ch, const SicOrder& order, SchemeKind scheme,
                         const SimConfig& cfg, int levels) {
  return grid_search(build_link_model(ch, order, scheme, cfg), cfg.r_min_bps_hz, levels);
}

}  // namespace fdnoma
