#include "fdnoma/polyblock.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "fdnoma/sinr.hpp"

namespace fdnoma {

PolyblockOptions polyblock_options(const SimConfig& cfg) {
  PolyblockOptions options;
  options.tol = cfg.solver_tol;
  options.vertex_budget = cfg.polyblock_vertex_budget;
  return options;
}

Eigen::VectorXd polyblock_lower_corner(const LinkModel& model, double r_min) {
  Eigen::VectorXd z(model.n_users());
  for (int d = 0; d < model.n_users(); ++d) z[d] = std::exp2(r_min / model.weight[d]);
  return z;
}

Eigen::VectorXd polyblock_upper_corner(const LinkModel& model) {
  return (1.0 + model.signal_gain.cwiseProduct(model.limits.upper).array() / model.noise_w)
      .matrix();
}

double weighted_log_utility(const LinkModel& model, const Eigen::VectorXd& z) {
  double phi = 0.0;
  for (Eigen::Index d = 0; d < z.size(); ++d) phi += model.weight[d] * std::log2(z[d]);
  return phi;
}

Eigen::VectorXd polyblock_anchor(const Eigen::VectorXd& z_lb, double anchor_offset) {
  return (z_lb.array() - anchor_offset).cwiseMax(0.0).matrix();
}

BoundaryPoint project_to_boundary(const LinkModel& model, const Eigen::VectorXd& anchor,
                                  const Eigen::VectorXd& z_lb, const Eigen::VectorXd& p_lb,
                                  const Eigen::VectorXd& v, double lambda_tol) {
  const Eigen::VectorXd direction = v - anchor;
  auto ray = [&](double lambda) -> Eigen::VectorXd { return anchor + lambda * direction; };
  auto targets = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
    return (z.cwiseMax(z_lb).array() - 1.0).cwiseMax(0.0).matrix();
  };

  BoundaryPoint bp;
  FeasibilityResult at_v = sinr_targets_feasible(model, targets(v));
  ++bp.oracle_calls;
  if (at_v.feasible()) {
    bp.lambda = bp.lambda_upper = 1.0;
    bp.y = v.cwiseMax(z_lb);
    bp.y_upper = v;
    bp.p = std::move(at_v.p);
    return bp;
  }

  // Up to the first coordinate crossing z_lb the clipped ray sits at z_lb.
  double lo = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (direction[i] > 0.0) lo = std::min(lo, (z_lb[i] - anchor[i]) / direction[i]);
  }
  lo = std::max(lo, 0.0);
  double hi = 1.0;
  Eigen::VectorXd p_lo = p_lb;
  // Relative tolerance (tighter than lambda_tol absolute) with an absolute
  // floor for rays whose feasible segment degenerates to the anchor.
  while (hi - lo > lambda_tol * hi && hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityResult r = sinr_targets_feasible(model, targets(ray(mid)));
    ++bp.oracle_calls;
    if (r.feasible()) {
      lo = mid;
      p_lo = std::move(r.p);
    } else {
      hi = mid;
    }
  }
  bp.lambda = lo;
  bp.lambda_upper = hi;
  bp.y = ray(lo).cwiseMax(z_lb);
  bp.y_upper = ray(hi);
  bp.p = std::move(p_lo);
  return bp;
}

BoundaryPoint project_to_boundary(const LinkModel& model, const Eigen::VectorXd& z_lb,
                                  const Eigen::VectorXd& p_lb, const Eigen::VectorXd& v,
                                  double lambda_tol) {
  return project_to_boundary(model, z_lb, z_lb, p_lb, v, lambda_tol);
}

namespace {

/// Live vertices in a flat pool, ordered by Phi (largest first, ties toward
/// the lexicographically smallest vertex).
class VertexPool {
 public:
  explicit VertexPool(int n) : n_(n), order_(Order{this}) {}

  const double* z(int id) const { return coords_.data() + static_cast<std::size_t>(id) * n_; }
  double phi(int id) const { return phi_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  int top() const { return order_.begin()->second; }
  double top_phi() const { return order_.begin()->first; }

  int insert(const double* z, double phi) {
    int id;
    if (!free_.empty()) {
      id = free_.back();
      free_.pop_back();
    } else {
      id = static_cast<int>(phi_.size());
      phi_.push_back(0.0);
      alive_.push_back(0);
      coords_.resize(coords_.size() + static_cast<std::size_t>(n_));
    }
    std::copy(z, z + n_, coords_.begin() + static_cast<std::ptrdiff_t>(id) * n_);
    phi_[static_cast<std::size_t>(id)] = phi;
    alive_[static_cast<std::size_t>(id)] = 1;
    order_.emplace(phi, id);
    return id;
  }

  void erase(int id) {
    order_.erase({phi_[static_cast<std::size_t>(id)], id});
    alive_[static_cast<std::size_t>(id)] = 0;
    free_.push_back(id);
  }

  /// Drops every vertex with Phi <= bound.
  void prune_at_or_below(double bound) {
    while (!order_.empty() && std::prev(order_.end())->first <= bound) {
      erase(std::prev(order_.end())->second);
    }
  }

  /// Ids of live vertices strictly above `y` in every coordinate.
  std::vector<int> strictly_above(const Eigen::VectorXd& y) const {
    std::vector<int> out;
    for (std::size_t id = 0; id < alive_.size(); ++id) {
      if (!alive_[id]) continue;
      const double* v = z(static_cast<int>(id));
      bool above = true;
      for (int i = 0; i < n_ && above; ++i) above = v[i] > y[i];
      if (above) out.push_back(static_cast<int>(id));
    }
    return out;
  }

  std::vector<PolyblockVertex> snapshot() const {
    std::vector<PolyblockVertex> out;
    for (const auto& [phi, id] : order_) out.push_back({phi, std::vector<double>(z(id), z(id) + n_)});
    return out;
  }

 private:
  struct Order {
    const VertexPool* pool;
    bool operator()(const std::pair<double, int>& a, const std::pair<double, int>& b) const {
      if (a.first != b.first) return a.first > b.first;
      if (a.second == b.second) return false;
      const double* za = pool->z(a.second);
      const double* zb = pool->z(b.second);
      if (std::lexicographical_compare(za, za + pool->n_, zb, zb + pool->n_)) return true;
      if (std::lexicographical_compare(zb, zb + pool->n_, za, za + pool->n_)) return false;
      return a.second < b.second;
    }
  };

  int n_;
  std::vector<double> coords_;
  std::vector<double> phi_;
  std::vector<char> alive_;
  std::vector<int> free_;
  std::set<std::pair<double, int>, Order> order_;
};

}  // namespace

SolverResult solve_polyblock(const LinkModel& model, double r_min, const PolyblockOptions& options,
                             PolyblockState* final_state) {
  const int n = model.n_users();
  SolverResult result;
  result.p = PowerAllocation::zeros(model.n_dl, model.n_ul);

  const Eigen::VectorXd z_lb = polyblock_lower_corner(model, r_min);
  const Eigen::VectorXd z_ub = polyblock_upper_corner(model);
  VertexPool vertices(n);

  auto export_state = [&](double cbv, const Eigen::VectorXd& best_p) {
    if (!final_state) return;
    final_state->vertices = vertices.snapshot();
    final_state->cbv = cbv;
    final_state->best_p = best_p;
    final_state->z_lb = z_lb;
    final_state->z_ub = z_ub;
  };

  FeasibilityResult lower = sinr_targets_feasible(model, (z_lb.array() - 1.0).matrix());
  if (!lower.feasible() || (z_ub.array() < z_lb.array()).any()) {
    result.status = SolverStatus::Infeasible;
    export_state(0.0, Eigen::VectorXd::Zero(n));
    return result;
  }
  const Eigen::VectorXd p_lb = lower.p;
  const Eigen::VectorXd anchor = polyblock_anchor(z_lb, options.anchor_offset);

  Eigen::VectorXd best_p = p_lb;
  double cbv = objective_value(model, best_p);

  if (const double phi = weighted_log_utility(model, z_ub); phi > cbv) {
    vertices.insert(z_ub.data(), phi);
  }

  long iteration = 0;
  SolverStatus status = SolverStatus::Converged;
  double upper = cbv;
  std::vector<double> child(static_cast<std::size_t>(n));
  while (true) {
    upper = vertices.empty() ? cbv : vertices.top_phi();
    if (options.record_trace) {
      result.trace.push_back({iteration, upper, cbv, static_cast<long>(vertices.size())});
    }
    if (upper - cbv <= options.tol) break;
    if (iteration >= options.vertex_budget ||
        static_cast<long>(vertices.size()) > options.vertex_budget) {
      status = SolverStatus::BudgetExhausted;
      break;
    }
    ++iteration;

    const int top = vertices.top();
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(vertices.z(top), n);
    const BoundaryPoint bp =
        project_to_boundary(model, anchor, z_lb, p_lb, v, options.lambda_tol);

    const double achieved = objective_value(model, bp.p);
    if (achieved > cbv) {
      cbv = achieved;
      best_p = bp.p;
    }
    if (bp.lambda_upper >= 1.0) {
      // v itself is feasible: nothing in its box beats it.
      vertices.erase(top);
      vertices.prune_at_or_below(cbv);
      continue;
    }

    // Nothing strictly above the cut point is feasible. Every vertex above it
    // is replaced by its children v - (v_i - cut_i) e_i. A child v^i can only
    // be dominated by a sibling u^i from another replaced vertex u, exactly
    // when u_j >= v_j for all j != i.
    const Eigen::VectorXd& cut = bp.y_upper;
    const std::vector<int> replaced = vertices.strictly_above(cut);
    std::vector<std::vector<double>> parents;
    parents.reserve(replaced.size());
    for (int id : replaced) parents.emplace_back(vertices.z(id), vertices.z(id) + n);
    for (int id : replaced) vertices.erase(id);

    for (std::size_t a = 0; a < parents.size(); ++a) {
      const std::vector<double>& pv = parents[a];
      for (int i = 0; i < n; ++i) {
        if (!(cut[i] > z_lb[i])) continue;
        bool dominated = false;
        for (std::size_t b = 0; b < parents.size() && !dominated; ++b) {
          if (b == a) continue;
          const std::vector<double>& pu = parents[b];
          bool covers = true;
          bool strict = false;
          for (int j = 0; j < n && covers; ++j) {
            if (j == i) continue;
            covers = pu[static_cast<std::size_t>(j)] >= pv[static_cast<std::size_t>(j)];
            strict = strict || pu[static_cast<std::size_t>(j)] > pv[static_cast<std::size_t>(j)];
          }
          // Identical children: keep the one from the earlier parent.
          dominated = covers && (strict || b < a);
        }
        if (dominated) continue;
        std::copy(pv.begin(), pv.end(), child.begin());
        child[static_cast<std::size_t>(i)] = cut[i];
        const double phi =
            weighted_log_utility(model, Eigen::Map<const Eigen::VectorXd>(child.data(), n));
        if (phi > cbv) vertices.insert(child.data(), phi);
      }
    }
    vertices.prune_at_or_below(cbv);
  }

  result.p = PowerAllocation::from_flat(best_p, model.n_dl);
  result.objective_bps_hz = sum_throughput(result.p, model);
  result.feasible = true;
  result.iterations = iteration;
  result.status = status;
  result.upper_bound = std::max(upper, cbv);
  export_state(cbv, best_p);
  return result;
}

SolverResult solve_polyblock(const LinkModel& model, const SimConfig& cfg) {
  return solve_polyblock(model, cfg.r_min_bps_hz, polyblock_options(cfg));
}

void write_polyblock_trace_csv(std::ostream& out, const SolverResult& result) {
  const auto old_precision = out.precision(12);
  out << "iter,upper_bound,cbv,n_vertices\n";
  for (const auto& row : result.trace) {
    out << row.iteration << ',' << row.upper_bound << ',' << row.objective << ',' << row.n_vertices
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdnoma
