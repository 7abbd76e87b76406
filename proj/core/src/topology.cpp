#include "fdnoma/topology.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "fdnoma/rng.hpp"

namespace fdnoma {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

int nearest_rrh(const std::vector<Point>& rrh, const Point& p) {
  int best = 0;
  double best_d = distance(rrh.front(), p);
  for (int c = 1; c < static_cast<int>(rrh.size()); ++c) {
    const double d = distance(rrh[c], p);
    if (d < best_d) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

void associate(Topology& topo) {
  topo.dl_cell.resize(topo.dl.size());
  topo.ul_cell.resize(topo.ul.size());
  for (std::size_t i = 0; i < topo.dl.size(); ++i) topo.dl_cell[i] = nearest_rrh(topo.rrh, topo.dl[i]);
  for (std::size_t i = 0; i < topo.ul.size(); ++i) topo.ul_cell[i] = nearest_rrh(topo.rrh, topo.ul[i]);
}

namespace {

constexpr int kMaxRedraws = 10000;

Point uniform_in_disk(RandomStream& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

bool too_close(const Point& p, const std::vector<Point>& others, double min_distance) {
  for (const Point& q : others) {
    if (distance(p, q) < min_distance) return true;
  }
  return false;
}

template <typename... Lists>
Point draw_node(RandomStream& rng, double radius, double min_distance, const Lists&... linked) {
  Point p = uniform_in_disk(rng, radius);
  for (int attempt = 0; attempt < kMaxRedraws && (too_close(p, linked, min_distance) || ...);
       ++attempt) {
    p = uniform_in_disk(rng, radius);
  }
  return p;
}

}  // namespace

Topology generate_drop(const SimConfig& cfg, long drop_index) {
  const auto drop = static_cast<std::uint64_t>(drop_index);
  Topology topo;
  topo.rrh.reserve(cfg.n_cells);
  for (int c = 0; c < cfg.n_cells; ++c) {
    RandomStream rng(cfg.base_seed, drop, StreamTag::RrhPosition, c);
    topo.rrh.push_back(draw_node(rng, cfg.area_radius_m, cfg.min_distance_m, topo.rrh));
  }
  for (int d = 0; d < cfg.n_dl_users; ++d) {
    RandomStream rng(cfg.base_seed, drop, StreamTag::DlPosition, d);
    topo.dl.push_back(draw_node(rng, cfg.area_radius_m, cfg.min_distance_m, topo.rrh));
  }
  for (int u = 0; u < cfg.n_ul_users; ++u) {
    RandomStream rng(cfg.base_seed, drop, StreamTag::UlPosition, u);
    topo.ul.push_back(draw_node(rng, cfg.area_radius_m, cfg.min_distance_m, topo.rrh, topo.dl));
  }
  associate(topo);
  return topo;
}

void write_drop(std::ostream& out, const Topology& topo) {
  const auto old_precision = out.precision(10);
  for (int c = 0; c < topo.n_cells(); ++c) {
    out << "rrh " << c << ' ' << topo.rrh[c].x << ' ' << topo.rrh[c].y << ' ' << c << '\n';
  }
  for (int d = 0; d < topo.n_dl(); ++d) {
    out << "dl " << d << ' ' << topo.dl[d].x << ' ' << topo.dl[d].y << ' ' << topo.dl_cell[d] << '\n';
  }
  for (int u = 0; u < topo.n_ul(); ++u) {
    out << "ul " << u << ' ' << topo.ul[u].x << ' ' << topo.ul[u].y << ' ' << topo.ul_cell[u] << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdnoma
