#include "fdnoma/channels.hpp"

#include <algorithm>
#include <cmath>

namespace fdnoma {

bool ChannelSet::gains_positive() const {
  auto positive = [](const auto& m) { return m.size() == 0 || (m.array() > 0.0).all(); };
  auto finite = [](const auto& m) { return m.allFinite(); };
  if (!positive(rrh_dl) || !positive(ul_rrh) || !positive(ul_dl) || !positive(si)) return false;
  if (!finite(rrh_dl) || !finite(ul_rrh) || !finite(ul_dl) || !finite(si) || !finite(rrh_rrh)) {
    return false;
  }
  for (int i = 0; i < rrh_rrh.rows(); ++i) {
    for (int j = 0; j < rrh_rrh.cols(); ++j) {
      if (i != j && !(rrh_rrh(i, j) > 0.0)) return false;
    }
  }
  return true;
}

double path_loss(double distance_m, double alpha, double d_min) {
  return std::pow(std::max(distance_m, d_min), -alpha);
}

double draw_fading_power(RandomStream& rng) { return rng.exponential(); }

ChannelSet build_channels(const Topology& topo, const SimConfig& cfg, long drop_index,
                          ChannelOptions options) {
  const auto drop = static_cast<std::uint64_t>(drop_index);
  const int n_cells = topo.n_cells();
  const int n_dl = topo.n_dl();
  const int n_ul = topo.n_ul();
  const double alpha = cfg.pathloss_exponent;
  const double d_min = cfg.min_distance_m;

  auto fading = [&](StreamTag tag, int a, int b) {
    if (options.unit_fading) return 1.0;
    RandomStream rng(cfg.base_seed, drop, tag, static_cast<std::uint64_t>(a),
                     static_cast<std::uint64_t>(b));
    return draw_fading_power(rng);
  };
  auto gain = [&](const Point& from, const Point& to, StreamTag tag, int a, int b) {
    return path_loss(distance(from, to), alpha, d_min) * fading(tag, a, b);
  };

  ChannelSet ch;
  ch.rrh_dl.resize(n_cells, n_dl);
  for (int c = 0; c < n_cells; ++c) {
    for (int d = 0; d < n_dl; ++d) {
      ch.rrh_dl(c, d) = gain(topo.rrh[c], topo.dl[d], StreamTag::FadingRrhDl, c, d);
    }
  }
  ch.ul_rrh.resize(n_ul, n_cells);
  for (int u = 0; u < n_ul; ++u) {
    for (int c = 0; c < n_cells; ++c) {
      ch.ul_rrh(u, c) = gain(topo.ul[u], topo.rrh[c], StreamTag::FadingUlRrh, u, c);
    }
  }
  ch.ul_dl.resize(n_ul, n_dl);
  for (int u = 0; u < n_ul; ++u) {
    for (int d = 0; d < n_dl; ++d) {
      ch.ul_dl(u, d) = gain(topo.ul[u], topo.dl[d], StreamTag::FadingUlDl, u, d);
    }
  }
  ch.rrh_rrh = Eigen::MatrixXd::Zero(n_cells, n_cells);
  for (int a = 0; a < n_cells; ++a) {
    for (int b = a + 1; b < n_cells; ++b) {
      const double g = gain(topo.rrh[a], topo.rrh[b], StreamTag::FadingRrhRrh, a, b);
      ch.rrh_rrh(a, b) = g;
      ch.rrh_rrh(b, a) = g;
    }
  }
  ch.si = Eigen::VectorXd::Constant(n_cells, cfg.si_gain());
  return ch;
}

}  // namespace fdnoma
