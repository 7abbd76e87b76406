#pragma once

#include <Eigen/Core>

#include "fdnoma/config.hpp"
#include "fdnoma/rng.hpp"
#include "fdnoma/topology.hpp"

namespace fdnoma {

/// Linear power gains of one drop.
struct ChannelSet {
  Eigen::MatrixXd rrh_dl;   ///< (cell, dl user)
  Eigen::MatrixXd ul_rrh;   ///< (ul user, cell)
  Eigen::MatrixXd ul_dl;    ///< (ul user, dl user)
  Eigen::MatrixXd rrh_rrh;  ///< (from cell, to cell); diagonal is unused and kept at 0
  Eigen::VectorXd si;       ///< per-RRH self-interference channel gain, no fading

  int n_cells() const { return static_cast<int>(rrh_dl.rows()); }
  int n_dl() const { return static_cast<int>(rrh_dl.cols()); }
  int n_ul() const { return static_cast<int>(ul_rrh.rows()); }

  /// True when every propagated gain and every SI gain is finite and > 0.
  bool gains_positive() const;
};

/// max(d, d_min)^(-alpha)
double path_loss(double distance_m, double alpha, double d_min);

/// |h|^2 for h ~ CN(0, 1), i.e. an Exponential(1) variate.
double draw_fading_power(RandomStream& rng);

struct ChannelOptions {
  bool unit_fading = false;  ///< test hook: every fading power is exactly 1
};

/// Path loss times Rayleigh fading for every propagated link. Fading is drawn
/// per link from a stream keyed by (base_seed, drop_index, link id); the
/// RRH-RRH channel is reciprocal.
ChannelSet build_channels(const Topology& topo, const SimConfig& cfg, long drop_index,
                          ChannelOptions options = {});

}  // namespace fdnoma
