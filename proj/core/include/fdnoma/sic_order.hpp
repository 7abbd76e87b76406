#pragma once

#include <vector>

#include "fdnoma/channels.hpp"
#include "fdnoma/topology.hpp"

namespace fdnoma {

/// Per-cell decoding order. Rank 0 is the strongest user (largest gain).
struct SicOrder {
  std::vector<std::vector<int>> dl_ranked;  ///< [cell] -> DL users, strongest first
  std::vector<std::vector<int>> ul_ranked;  ///< [cell] -> UL users, strongest first
  std::vector<int> dl_cell;
  std::vector<int> ul_cell;
  std::vector<int> dl_rank;  ///< rank of each DL user inside its cell
  std::vector<int> ul_rank;

  int n_cells() const { return static_cast<int>(dl_ranked.size()); }
  int n_dl() const { return static_cast<int>(dl_cell.size()); }
  int n_ul() const { return static_cast<int>(ul_cell.size()); }
};

/// DL users sorted by serving-RRH gain, UL users by gain toward their RRH;
/// both descending, ties by lower user index.
SicOrder sic_order(const ChannelSet& ch, const Topology& topo);

/// Same ordering from an explicit association (used when no Topology exists).
SicOrder sic_order(const ChannelSet& ch, const std::vector<int>& dl_cell,
                   const std::vector<int>& ul_cell);

}  // namespace fdnoma
