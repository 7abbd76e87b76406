#include <benchmark/benchmark.h>

#include "fdnoma/channels.hpp"
#include "fdnoma/experiment.hpp"
#include "fdnoma/link_model.hpp"
#include "fdnoma/polyblock.hpp"
#include "fdnoma/power_control.hpp"
#include "fdnoma/sca.hpp"
#include "fdnoma/sic_order.hpp"
#include "fdnoma/sinr.hpp"
#include "fdnoma/topology.hpp"

namespace {

using namespace fdnoma;

SimConfig shaped(int cells, int users_per_cell) {
  SimConfig cfg;
  cfg.n_cells = cells;
  cfg.n_dl_users = cells * users_per_cell;
  cfg.n_ul_users = cells * users_per_cell;
  return cfg;
}

LinkModel model_for(const SimConfig& cfg, long drop, SchemeKind scheme) {
  const Topology topo = generate_drop(cfg, drop);
  const ChannelSet ch = build_channels(topo, cfg, drop);
  return build_link_model(ch, sic_order(ch, topo), scheme, cfg);
}

void BM_BuildLinkModel(benchmark::State& state) {
  const SimConfig cfg = shaped(2, static_cast<int>(state.range(0)));
  const Topology topo = generate_drop(cfg, 0);
  const ChannelSet ch = build_channels(topo, cfg, 0);
  const SicOrder order = sic_order(ch, topo);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_link_model(ch, order, SchemeKind::CFdbNomaOptimal, cfg));
  }
}
BENCHMARK(BM_BuildLinkModel)->Arg(1)->Arg(2)->Arg(4);

void BM_FixedPointOracle(benchmark::State& state) {
  const SimConfig cfg = shaped(2, static_cast<int>(state.range(0)));
  const LinkModel m = model_for(cfg, 0, SchemeKind::CFdbNomaOptimal);
  const Eigen::VectorXd gamma = Eigen::VectorXd::Constant(m.n_users(), 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(sinr_targets_feasible(m, gamma));
}
BENCHMARK(BM_FixedPointOracle)->Arg(1)->Arg(2)->Arg(4);

void BM_BoundaryProjection(benchmark::State& state) {
  const SimConfig cfg = shaped(2, static_cast<int>(state.range(0)));
  const LinkModel m = model_for(cfg, 0, SchemeKind::CFdbNomaOptimal);
  const Eigen::VectorXd lb = polyblock_lower_corner(m, 0.0);
  const Eigen::VectorXd ub = polyblock_upper_corner(m);
  const Eigen::VectorXd p_lb = Eigen::VectorXd::Zero(m.n_users());
  const Eigen::VectorXd anchor = polyblock_anchor(lb, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(project_to_boundary(m, anchor, lb, p_lb, ub));
}
BENCHMARK(BM_BoundaryProjection)->Arg(1)->Arg(2)->Arg(4);

void BM_Polyblock(benchmark::State& state) {
  const SimConfig cfg = shaped(static_cast<int>(state.range(0)), 1);
  const LinkModel m = model_for(cfg, state.range(1), SchemeKind::CFdbNomaOptimal);
  PolyblockOptions options;
  options.record_trace = false;
  for (auto _ : state) benchmark::DoNotOptimize(solve_polyblock(m, 0.0, options));
}
BENCHMARK(BM_Polyblock)->Args({1, 0})->Args({2, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);

void BM_Sca(benchmark::State& state) {
  const SimConfig cfg = shaped(2, static_cast<int>(state.range(0)));
  const LinkModel m = model_for(cfg, 0, SchemeKind::CFdbNomaSuboptimal);
  const ScaOptions options = sca_options(cfg, 0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_sca(m, 0.0, options));
}
BENCHMARK(BM_Sca)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_RunDropSmall(benchmark::State& state) {
  const SimConfig cfg = shaped(2, 1);
  const std::vector<SchemeKind> schemes(kAllSchemes.begin(), kAllSchemes.end());
  for (auto _ : state) benchmark::DoNotOptimize(run_drop(cfg, 0, schemes));
}
BENCHMARK(BM_RunDropSmall)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
