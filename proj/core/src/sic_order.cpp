#include "fdnoma/sic_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdnoma {

SicOrder sic_order(const ChannelSet& ch, const Topology& topo) {
  return sic_order(ch, topo.dl_cell, topo.ul_cell);
}

SicOrder sic_order(const ChannelSet& ch, const std::vector<int>& dl_cell,
                   const std::vector<int>& ul_cell) {
  const int n_cells = ch.n_cells();
  if (static_cast<int>(dl_cell.size()) != ch.n_dl() || static_cast<int>(ul_cell.size()) != ch.n_ul()) {
    throw std::invalid_argument("sic_order: association does not match channel dimensions");
  }
  SicOrder order;
  order.dl_cell = dl_cell;
  order.ul_cell = ul_cell;
  order.dl_ranked.resize(n_cells);
  order.ul_ranked.resize(n_cells);
  for (int d = 0; d < ch.n_dl(); ++d) order.dl_ranked.at(dl_cell[d]).push_back(d);
  for (int u = 0; u < ch.n_ul(); ++u) order.ul_ranked.at(ul_cell[u]).push_back(u);

  order.dl_rank.assign(ch.n_dl(), 0);
  order.ul_rank.assign(ch.n_ul(), 0);
  for (int c = 0; c < n_cells; ++c) {
    auto& dl = order.dl_ranked[c];
    std::stable_sort(dl.begin(), dl.end(),
                     [&](int a, int b) { return ch.rrh_dl(c, a) > ch.rrh_dl(c, b); });
    auto& ul = order.ul_ranked[c];
    std::stable_sort(ul.begin(), ul.end(),
                     [&](int a, int b) { return ch.ul_rrh(a, c) > ch.ul_rrh(b, c); });
    for (std::size_t r = 0; r < dl.size(); ++r) order.dl_rank[dl[r]] = static_cast<int>(r);
    for (std::size_t r = 0; r < ul.size(); ++r) order.ul_rank[ul[r]] = static_cast<int>(r);
  }
  return order;
}

}  // namespace fdnoma
