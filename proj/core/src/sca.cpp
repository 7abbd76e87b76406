#include "fdnoma/sca.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "fdnoma/power_control.hpp"
#include "fdnoma/rng.hpp"
#include "fdnoma/sinr.hpp"

namespace fdnoma {

ScaOptions sca_options(const SimConfig& cfg, long drop_index) {
  ScaOptions options;
  options.tol = cfg.solver_tol;
  options.max_iterations = cfg.sca_max_iterations;
  options.init = cfg.sca_init;
  options.restarts = cfg.sca_restarts;
  options.seed = stream_key(cfg.base_seed, static_cast<std::uint64_t>(drop_index), StreamTag::ScaRestart);
  return options;
}

Eigen::VectorXd sinr_thresholds(const LinkModel& model, double r_min) {
  Eigen::VectorXd theta(model.n_users());
  for (int d = 0; d < model.n_users(); ++d) theta[d] = std::exp2(r_min / model.weight[d]) - 1.0;
  return theta;
}

LinearInequalities normalized_constraints(const LinkModel& model, double r_min) {
  const int n = model.n_users();
  const Eigen::VectorXd& upper = model.limits.upper;
  const Eigen::VectorXd theta = sinr_thresholds(model, r_min);
  const int n_rate = static_cast<int>((theta.array() > 0.0).count());
  const int rows = 2 * n + static_cast<int>(model.limits.groups.size()) + n_rate;

  LinearInequalities cons;
  cons.G = Eigen::MatrixXd::Zero(rows, n);
  cons.h = Eigen::VectorXd::Zero(rows);
  int r = 0;
  for (int j = 0; j < n; ++j, ++r) cons.G(r, j) = -1.0;  // x_j >= 0
  for (int j = 0; j < n; ++j, ++r) {                      // x_j <= 1
    cons.G(r, j) = 1.0;
    cons.h[r] = 1.0;
  }
  for (const auto& g : model.limits.groups) {
    for (int j : g.members) cons.G(r, j) = upper[j] / g.cap;
    cons.h[r] = 1.0;
    ++r;
  }
  for (int d = 0; d < n; ++d) {
    if (!(theta[d] > 0.0)) continue;
    // theta (N0 + I_d) - S_d <= 0, in units of N0, row-normalized.
    Eigen::RowVectorXd row =
        theta[d] * model.coupling.row(d).cwiseProduct(upper.transpose()) / model.noise_w;
    row[d] -= model.signal_gain[d] * upper[d] / model.noise_w;
    double rhs = -theta[d];
    const double norm = row.norm();
    cons.G.row(r) = row / norm;
    cons.h[r] = rhs / norm;
    ++r;
  }
  return cons;
}

namespace {

constexpr double kStrictMargin = 1e-9;

/// Per-variable scale that brings a uniform fraction of every cap inside the
/// group sum caps.
Eigen::VectorXd uniform_fraction(const LinkModel& model, double fraction) {
  Eigen::VectorXd p = model.limits.upper * fraction;
  for (const auto& g : model.limits.groups) {
    double total = 0.0;
    for (int j : g.members) total += p[j];
    if (total > fraction * g.cap) {
      const double shrink = fraction * g.cap / total;
      for (int j : g.members) p[j] *= shrink;
    }
  }
  return p;
}

bool strictly_inside_caps(const LinkModel& model, const Eigen::VectorXd& p) {
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (!(p[j] > 0.0) || p[j] >= model.limits.upper[j] * (1.0 - kStrictMargin)) return false;
  }
  for (const auto& g : model.limits.groups) {
    double total = 0.0;
    for (int j : g.members) total += p[j];
    if (total >= g.cap * (1.0 - kStrictMargin)) return false;
  }
  return true;
}

bool meets_rates(const LinkModel& model, const Eigen::VectorXd& p, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd sinr = sinr_vector(model, p);
  return ((sinr - theta).array() >= 0.0).all();
}

}  // namespace

std::optional<Eigen::VectorXd> strictly_feasible_point(const LinkModel& model, double r_min) {
  const Eigen::VectorXd theta = sinr_thresholds(model, r_min);
  if (!(theta.array() > 0.0).any()) return uniform_fraction(model, 0.5);
  for (double margin : {1e-2, 1e-4, 1e-6}) {
    const Eigen::VectorXd targets = theta * (1.0 + margin);
    FeasibilityResult r = sinr_targets_feasible(model, targets);
    if (!r.feasible()) continue;
    // Users without a rate demand still need strictly positive power.
    Eigen::VectorXd p = r.p;
    const Eigen::VectorXd floor = uniform_fraction(model, 1e-9);
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (!(theta[j] > 0.0)) p[j] = std::max(p[j], floor[j]);
    }
    if (strictly_inside_caps(model, p) && meets_rates(model, p, theta)) return p;
  }
  return std::nullopt;
}

SubproblemResult solve_convex_subproblem(const DcSurrogate& surrogate, const LinkModel& model,
                                         double r_min, const InteriorPointOptions& inner) {
  SubproblemResult out;
  out.constraints = normalized_constraints(model, r_min);
  const auto center = strictly_feasible_point(model, r_min);
  if (!center) return out;

  const Eigen::VectorXd upper = model.limits.upper;
  const Eigen::VectorXd x_ref = surrogate.p_ref.cwiseQuotient(upper);
  const Eigen::VectorXd x_center = center->cwiseQuotient(upper);
  Eigen::VectorXd x0 = 0.95 * x_ref + 0.05 * x_center;
  if ((out.constraints.slack(x0).array() <= 0.0).any()) x0 = x_center;  // p_ref infeasible

  ConcaveObjective f;
  f.value = [&](const Eigen::VectorXd& x) { return surrogate.value(upper.cwiseProduct(x)); };
  f.gradient = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return upper.cwiseProduct(surrogate.gradient(upper.cwiseProduct(x)));
  };
  f.hessian = [&](const Eigen::VectorXd& x) -> Eigen::MatrixXd {
    return upper.asDiagonal() * surrogate.hessian(upper.cwiseProduct(x)) * upper.asDiagonal();
  };

  const InteriorPointResult ipm = maximize_concave(f, out.constraints, x0, inner);
  out.feasible = true;
  out.x = ipm.x;
  out.p = upper.cwiseProduct(ipm.x);
  out.surrogate_value = ipm.value;
  out.kkt_residual = ipm.kkt_residual;
  out.multipliers = ipm.multipliers;
  out.iterations = ipm.iterations;
  return out;
}

std::optional<Eigen::VectorXd> sca_initial_point(const LinkModel& model, double r_min, ScaInit init) {
  const Eigen::VectorXd theta = sinr_thresholds(model, r_min);
  if (init == ScaInit::TenthOfCap) {
    // Scaling every power down never raises an SINR (S and I are both linear
    // in p), so a rate-infeasible start goes straight to the oracle point.
    Eigen::VectorXd p = uniform_fraction(model, 0.1);
    if (meets_rates(model, p, theta)) return p;
    return strictly_feasible_point(model, r_min);
  }
  FeasibilityResult r = sinr_targets_feasible(model, theta);
  if (!r.feasible()) return std::nullopt;
  return r.p;
}

namespace {

SolverResult run_sca_from(const LinkModel& model, double r_min, const ScaOptions& options,
                          Eigen::VectorXd p) {
  SolverResult result;
  result.feasible = true;
  result.status = SolverStatus::IterationLimit;
  double objective = objective_value(model, p);
  result.trace.push_back({0, std::numeric_limits<double>::quiet_NaN(), objective, 0, 0.0,
                          std::numeric_limits<double>::quiet_NaN()});

  for (int it = 1; it <= options.max_iterations; ++it) {
    const DcSurrogate surrogate = build_surrogate(p, model);
    const SubproblemResult sub = solve_convex_subproblem(surrogate, model, r_min, options.inner);
    result.iterations = it;
    if (!sub.feasible) {
      result.status = SolverStatus::Converged;
      break;
    }
    const double next_objective = objective_value(model, sub.p);
    const double step =
        (sub.p - p).cwiseQuotient(model.limits.upper).lpNorm<Eigen::Infinity>();
    // Minorize-maximize: f(p_next) >= surrogate(p_next) >= surrogate(p) = f(p).
    // A non-improving subproblem (round-off) ends the run on the current point.
    if (!(next_objective >= objective)) {
      result.status = SolverStatus::Converged;
      break;
    }
    const double improvement = next_objective - objective;
    p = sub.p;
    objective = next_objective;
    result.trace.push_back({it, std::numeric_limits<double>::quiet_NaN(), objective, 0, step,
                            sub.kkt_residual});
    if (improvement < options.tol) {
      result.status = SolverStatus::Converged;
      break;
    }
  }
  result.p = PowerAllocation::from_flat(p, model.n_dl);
  result.objective_bps_hz = sum_throughput(result.p, model);
  return result;
}

}  // namespace

SolverResult solve_sca(const LinkModel& model, double r_min, const ScaOptions& options,
                       const std::optional<Eigen::VectorXd>& p0) {
  std::optional<Eigen::VectorXd> start = p0 ? p0 : sca_initial_point(model, r_min, options.init);
  if (!start) {
    SolverResult infeasible;
    infeasible.p = PowerAllocation::zeros(model.n_dl, model.n_ul);
    infeasible.status = SolverStatus::Infeasible;
    return infeasible;
  }
  SolverResult best = run_sca_from(model, r_min, options, *start);

  const Eigen::VectorXd theta = sinr_thresholds(model, r_min);
  for (int restart = 1; restart < options.restarts; ++restart) {
    std::optional<Eigen::VectorXd> p;
    if (restart == 1) {
      // First restart: the other deterministic starting rule.
      p = sca_initial_point(model, r_min,
                            options.init == ScaInit::TenthOfCap ? ScaInit::MinimumPower
                                                                : ScaInit::TenthOfCap);
    } else {
      RandomStream rng(options.seed ^ splitmix64(static_cast<std::uint64_t>(restart)));
      p = uniform_fraction(model, 1.0);
      for (Eigen::Index j = 0; j < p->size(); ++j) (*p)[j] *= rng.uniform();
      if (!meets_rates(model, *p, theta)) p = strictly_feasible_point(model, r_min);
    }
    if (!p) break;
    SolverResult candidate = run_sca_from(model, r_min, options, *p);
    if (candidate.objective_bps_hz > best.objective_bps_hz) best = std::move(candidate);
  }
  return best;
}

SolverResult solve_sca(const LinkModel& model, const SimConfig& cfg, long drop_index) {
  return solve_sca(model, cfg.r_min_bps_hz, sca_options(cfg, drop_index));
}

void write_sca_trace_csv(std::ostream& out, const SolverResult& result) {
  const auto old_precision = out.precision(12);
  out << "iter,objective,step_norm,kkt_residual\n";
  for (const auto& row : result.trace) {
    out << row.iteration << ',' << row.objective << ',' << row.step_norm << ',' << row.kkt_residual
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdnoma
