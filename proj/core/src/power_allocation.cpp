#include "fdnoma/power_allocation.hpp"

#include <cmath>

namespace fdnoma {

PowerAllocation PowerAllocation::zeros(int n_dl, int n_ul) {
  return {std::vector<double>(n_dl, 0.0), std::vector<double>(n_ul, 0.0)};
}

PowerAllocation PowerAllocation::from_flat(const Eigen::VectorXd& flat, int n_dl) {
  PowerAllocation p;
  p.dl_w.assign(flat.data(), flat.data() + n_dl);
  p.ul_w.assign(flat.data() + n_dl, flat.data() + flat.size());
  return p;
}

Eigen::VectorXd PowerAllocation::flat() const {
  Eigen::VectorXd v(size());
  for (std::size_t i = 0; i < dl_w.size(); ++i) v[static_cast<Eigen::Index>(i)] = dl_w[i];
  for (std::size_t i = 0; i < ul_w.size(); ++i) {
    v[static_cast<Eigen::Index>(dl_w.size() + i)] = ul_w[i];
  }
  return v;
}

std::vector<std::string> PowerLimits::violations(const Eigen::VectorXd& p, double rel_tol) const {
  std::vector<std::string> out;
  if (p.size() != upper.size()) {
    out.push_back("dimension mismatch");
    return out;
  }
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (!std::isfinite(p[j]) || p[j] < 0.0) {
      out.push_back("power " + std::to_string(j) + " is negative or not finite");
    } else if (p[j] > upper[j] * (1.0 + rel_tol)) {
      out.push_back("power " + std::to_string(j) + " exceeds its cap");
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double sum = 0.0;
    for (int j : groups[g].members) sum += p[j];
    if (sum > groups[g].cap * (1.0 + rel_tol)) {
      out.push_back("group " + std::to_string(g) + " exceeds its sum cap");
    }
  }
  return out;
}

bool PowerLimits::contains(const Eigen::VectorXd& p, double rel_tol) const {
  return violations(p, rel_tol).empty();
}

PowerLimits generic_power_limits(const std::vector<int>& dl_cell, int n_cells, int n_ul,
                                 const SimConfig& cfg) {
  const int n_dl = static_cast<int>(dl_cell.size());
  PowerLimits limits;
  limits.upper.resize(n_dl + n_ul);
  limits.upper.head(n_dl).setConstant(cfg.p_dl_max_w());
  limits.upper.tail(n_ul).setConstant(cfg.p_ul_max_w());
  limits.groups.resize(n_cells);
  for (int c = 0; c < n_cells; ++c) limits.groups[c].cap = cfg.p_dl_max_w();
  for (int d = 0; d < n_dl; ++d) limits.groups[dl_cell[d]].members.push_back(d);
  return limits;
}

}  // namespace fdnoma

#include "fdnoma/solver_result.hpp"

namespace fdnoma {

std::string_view status_name(SolverStatus status) {
  switch (status) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::BudgetExhausted: return "budget_exhausted";
    case SolverStatus::IterationLimit: return "iteration_limit";
    case SolverStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

}  // namespace fdnoma
