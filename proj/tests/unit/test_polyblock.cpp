#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "fdnoma/grid_search.hpp"
#include "fdnoma/polyblock.hpp"
#include "fdnoma/power_control.hpp"
#include "fdnoma/sinr.hpp"
#include "test_util.hpp"

namespace fdnoma {
namespace {

LinkModel isolated_model(std::vector<double> gains, double n0, double cap, double weight = 1.0) {
  const int n = static_cast<int>(gains.size());
  LinkModel m;
  m.n_dl = n;
  m.noise_w = n0;
  m.signal_gain = Eigen::Map<Eigen::VectorXd>(gains.data(), n);
  for (auto& b : m.coupling_by_kind) b = Eigen::MatrixXd::Zero(n, n);
  m.coupling = Eigen::MatrixXd::Zero(n, n);
  m.weight = Eigen::VectorXd::Constant(n, weight);
  m.limits.upper = Eigen::VectorXd::Constant(n, cap);
  return m;
}

TEST(GridLevels, ContentAndNesting) {
  const auto g16 = grid_levels(2.0, 16);
  ASSERT_EQ(g16.size(), 18u);
  EXPECT_EQ(g16.front(), 0.0);
  EXPECT_DOUBLE_EQ(g16[1], 2.0e-4);
  EXPECT_DOUBLE_EQ(g16.back(), 2.0);
  for (std::size_t i = 1; i < g16.size(); ++i) EXPECT_LT(g16[i - 1], g16[i]);
  const auto g64 = grid_levels(2.0, 64);
  const auto g256 = grid_levels(2.0, 256);
  for (double x : g16) {
    EXPECT_TRUE(std::any_of(g64.begin(), g64.end(), [&](double y) { return std::abs(x - y) <= 1e-15 * x; }));
  }
  for (double x : g64) {
    EXPECT_TRUE(std::any_of(g256.begin(), g256.end(), [&](double y) { return std::abs(x - y) <= 1e-15 * x; }));
  }
}

TEST(GridSearch, SnapDownStaysBelow) {
  const LinkModel m = isolated_model({1.0, 1.0}, 1.0, 1.0);
  const Eigen::VectorXd s = snap_down_to_grid(m, Eigen::Vector2d(0.5, 1e-9), 16);
  EXPECT_LE(s[0], 0.5);
  EXPECT_GT(s[0], 0.5 * std::pow(10.0, -0.25) * 0.999);
  EXPECT_EQ(s[1], 0.0);
}

TEST(GridSearch, IsolatedLinksTakeFullPower) {
  const LinkModel m = isolated_model({1e-6, 3e-6}, 1e-9, 1.0);
  const SolverResult r = grid_search(m, 0.0, 16);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.p.dl_w, (std::vector<double>{1.0, 1.0}));
  EXPECT_NEAR(r.objective_bps_hz, std::log2(1001.0) + std::log2(3001.0), 1e-12);
  EXPECT_EQ(r.iterations, 18 * 18);
}

TEST(GridSearch, RejectsLargeInstances) {
  const LinkModel m = isolated_model(std::vector<double>(7, 1.0), 1.0, 1.0);
  EXPECT_THROW(grid_search(m, 0.0, 4), std::invalid_argument);
}

TEST(Polyblock, CornersAndUtility) {
  const LinkModel m = isolated_model({1e-6, 3e-6}, 1e-9, 1.0, 0.5);
  const Eigen::VectorXd lb = polyblock_lower_corner(m, 0.25);
  EXPECT_NEAR(lb[0], std::pow(2.0, 0.5), 1e-15);
  const Eigen::VectorXd ub = polyblock_upper_corner(m);
  EXPECT_NEAR(ub[1], 3001.0, 1e-9);
  EXPECT_NEAR(weighted_log_utility(m, ub), 0.5 * (std::log2(1001.0) + std::log2(3001.0)), 1e-12);
  const Eigen::VectorXd a = polyblock_anchor(Eigen::Vector2d(1.5, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  EXPECT_DOUBLE_EQ(a[1], 2.0);
  EXPECT_EQ(polyblock_anchor(Eigen::Vector2d(0.5, 1.0), 1.0).norm(), 0.0);
}

TEST(Polyblock, SingleLinkClosedForm) {
  const LinkModel m = isolated_model({2e-6}, 1e-9, 0.5);
  const SolverResult r = solve_polyblock(m, 0.0, PolyblockOptions{});
  EXPECT_EQ(r.status, SolverStatus::Converged);
  EXPECT_NEAR(r.objective_bps_hz, std::log2(1001.0), 1e-3);
  EXPECT_LE(r.objective_bps_hz, std::log2(1001.0) + 1e-12);
}

TEST(Polyblock, InfeasibleDemand) {
  const LinkModel m = isolated_model({1e-6}, 1e-9, 1.0);
  const SolverResult r = solve_polyblock(m, 10.5, PolyblockOptions{});
  EXPECT_EQ(r.status, SolverStatus::Infeasible);
  EXPECT_FALSE(r.feasible);
}

TEST(Polyblock, ProjectionBracketsTheBoundary) {
  const SimConfig cfg = test::shaped(1, 2, 1);
  const auto d = test::make_drop(cfg, 3);
  const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
  const Eigen::VectorXd lb = polyblock_lower_corner(m, 0.0);
  const Eigen::VectorXd ub = polyblock_upper_corner(m);
  const auto lower = sinr_targets_feasible(m, (lb.array() - 1.0).matrix());
  ASSERT_TRUE(lower.feasible());
  for (double offset : {0.0, 1.0}) {
    const Eigen::VectorXd anchor = polyblock_anchor(lb, offset);
    const BoundaryPoint bp = project_to_boundary(m, anchor, lb, lower.p, ub);
    EXPECT_LT(bp.lambda, bp.lambda_upper);
    EXPECT_LE(bp.lambda_upper - bp.lambda, 1e-6 * bp.lambda_upper + 1e-12);
    EXPECT_TRUE(sinr_targets_feasible(m, (bp.y.array() - 1.0).matrix()).feasible());
    // y_upper is not clipped at z_lb; the oracle target is.
    EXPECT_FALSE(
        sinr_targets_feasible(m, (bp.y_upper.cwiseMax(lb).array() - 1.0).matrix()).feasible());
    const Eigen::VectorXd achieved = sinr_vector(m, bp.p).array() + 1.0;
    EXPECT_TRUE((achieved.array() >= bp.y.array() * (1.0 - 1e-9)).all());
    EXPECT_TRUE(m.limits.contains(bp.p, 1e-9));
  }
}

TEST(Polyblock, FeasibleVertexProjectsToItself) {
  const LinkModel m = isolated_model({1e-6, 1e-6}, 1e-9, 1.0);
  const Eigen::VectorXd lb = polyblock_lower_corner(m, 0.0);
  const Eigen::Vector2d v(11.0, 21.0);
  const BoundaryPoint bp = project_to_boundary(m, lb, Eigen::Vector2d::Zero(), v);
  EXPECT_EQ(bp.lambda, 1.0);
  EXPECT_EQ(bp.lambda_upper, 1.0);
  EXPECT_NEAR(bp.p[0], 1e-2, 1e-12);
  EXPECT_NEAR(bp.p[1], 2e-2, 1e-12);
}

class PolyblockDrops : public ::testing::TestWithParam<SchemeKind> {};

TEST_P(PolyblockDrops, InvariantsAndGridAgreement) {
  const SimConfig cfg = test::shaped(1, 1, 1);
  for (long drop = 0; drop < 5; ++drop) {
    const auto d = test::make_drop(cfg, drop);
    const LinkModel m = build_link_model(d.ch, d.order, GetParam(), cfg);
    PolyblockState state;
    const SolverResult r = solve_polyblock(m, 0.0, polyblock_options(cfg), &state);
    ASSERT_EQ(r.status, SolverStatus::Converged);
    ASSERT_TRUE(r.feasible);
    const Eigen::VectorXd p = r.p.flat();
    EXPECT_TRUE(m.limits.contains(p, 1e-9));
    EXPECT_NEAR(r.objective_bps_hz, objective_value(m, p), 1e-12);
    EXPECT_GE(r.upper_bound, r.objective_bps_hz - 1e-12);
    EXPECT_LE(r.upper_bound - r.objective_bps_hz, cfg.solver_tol + 1e-12);

    // Upper bound never rises, incumbent never falls.
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      EXPECT_LE(r.trace[i].upper_bound, r.trace[i - 1].upper_bound + 1e-12);
      EXPECT_GE(r.trace[i].objective, r.trace[i - 1].objective);
    }
    for (const auto& v : state.vertices) {
      for (int j = 0; j < m.n_users(); ++j) {
        EXPECT_GE(v.z[j], state.z_lb[j]);
        EXPECT_LE(v.z[j], state.z_ub[j]);
      }
      EXPECT_GT(v.phi, state.cbv);
    }

    // The optimum is at least the best grid point, which in turn beats the
    // optimum snapped down to the grid.
    const SolverResult g = grid_search(m, 0.0, 64);
    EXPECT_GE(r.objective_bps_hz, g.objective_bps_hz - cfg.solver_tol);
    const Eigen::VectorXd snapped = snap_down_to_grid(m, p, 64);
    EXPECT_GE(g.objective_bps_hz, objective_value(m, snapped) - 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(AllSchemes, PolyblockDrops,
                         ::testing::Values(SchemeKind::CFdbNomaOptimal, SchemeKind::FdbNoma,
                                           SchemeKind::FdbOma, SchemeKind::HdbNoma),
                         [](const auto& info) { return std::string(scheme_name(info.param)); });

TEST(Polyblock, RateDemandsRespected) {
  SimConfig cfg = test::shaped(1, 2, 1);
  cfg.r_min_bps_hz = 0.05;
  int solved = 0;
  for (long drop = 0; drop < 6; ++drop) {
    const auto d = test::make_drop(cfg, drop);
    const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
    const SolverResult r = solve_polyblock(m, cfg);
    if (!r.feasible) continue;
    ++solved;
    EXPECT_TRUE(rate_constraints_satisfied(r.p, m, cfg.r_min_bps_hz, 1e-9).satisfied);
  }
  EXPECT_GT(solved, 0);
}

TEST(Polyblock, BudgetExhaustionReturnsIncumbent) {
  const SimConfig cfg = test::shaped(2, 2, 2);
  const auto d = test::make_drop(cfg, 1);
  const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
  PolyblockOptions opt;
  opt.vertex_budget = 3;
  const SolverResult r = solve_polyblock(m, 0.0, opt);
  EXPECT_EQ(r.status, SolverStatus::BudgetExhausted);
  EXPECT_TRUE(r.feasible);
  EXPECT_LE(r.iterations, 3);
  EXPECT_GT(r.upper_bound, r.objective_bps_hz + opt.tol);
  EXPECT_TRUE(m.limits.contains(r.p.flat(), 1e-9));
}

TEST(Polyblock, AnchorDoesNotChangeTheOptimum) {
  const SimConfig cfg = test::shaped(1, 2, 1);
  const auto d = test::make_drop(cfg, 4);
  const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
  PolyblockOptions a, b;
  b.anchor_offset = 0.0;
  const SolverResult ra = solve_polyblock(m, 0.0, a);
  const SolverResult rb = solve_polyblock(m, 0.0, b);
  ASSERT_EQ(ra.status, SolverStatus::Converged);
  if (rb.status == SolverStatus::Converged) {
    EXPECT_NEAR(ra.objective_bps_hz, rb.objective_bps_hz, 2.0 * cfg.solver_tol);
  }
}

TEST(Polyblock, TraceCsv) {
  const LinkModel m = isolated_model({2e-6}, 1e-9, 0.5);
  const SolverResult r = solve_polyblock(m, 0.0, PolyblockOptions{});
  std::ostringstream out;
  write_polyblock_trace_csv(out, r);
  const std::string csv = out.str();
  EXPECT_EQ(csv.rfind("iter,upper_bound,cbv,n_vertices\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), r.trace.size() + 1);
}

}  // namespace
}  // namespace fdnoma
