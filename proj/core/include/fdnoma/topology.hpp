#pragma once

#include <iosfwd>
#include <vector>

#include "fdnoma/config.hpp"

namespace fdnoma {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

/// Node positions of one drop and the user-to-cell association.
struct Topology {
  std::vector<Point> rrh;
  std::vector<Point> dl;
  std::vector<Point> ul;
  std::vector<int> dl_cell;  ///< serving RRH of each DL user
  std::vector<int> ul_cell;  ///< serving RRH of each UL user

  int n_cells() const { return static_cast<int>(rrh.size()); }
  int n_dl() const { return static_cast<int>(dl.size()); }
  int n_ul() const { return static_cast<int>(ul.size()); }
};

/// Index of the nearest RRH; ties go to the lowest index.
int nearest_rrh(const std::vector<Point>& rrh, const Point& p);

/// Fills dl_cell/ul_cell by nearest-RRH association.
void associate(Topology& topo);

/// Uniform random drop in the disk of radius area_radius_m. RRHs and users are
/// drawn from per-node streams keyed by (base_seed, drop_index); a node closer
/// than min_distance_m to a node it shares a link with is redrawn.
Topology generate_drop(const SimConfig& cfg, long drop_index);

/// One node per line: `kind index x y cell`.
void write_drop(std::ostream& out, const Topology& topo);

}  // namespace fdnoma
