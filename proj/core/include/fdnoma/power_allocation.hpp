#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fdnoma/config.hpp"

namespace fdnoma {

/// Decision vector: one transmit power per DL user (set by its serving RRH)
/// and one per UL user. The flat layout used by the solvers is
/// [dl_0 .. dl_{n_dl-1}, ul_0 .. ul_{n_ul-1}].
struct PowerAllocation {
  std::vector<double> dl_w;
  std::vector<double> ul_w;

  static PowerAllocation zeros(int n_dl, int n_ul);
  static PowerAllocation from_flat(const Eigen::VectorXd& flat, int n_dl);

  Eigen::VectorXd flat() const;
  int size() const { return static_cast<int>(dl_w.size() + ul_w.size()); }
};

/// Box and sum caps describing a power feasible set over the flat layout.
struct PowerLimits {
  struct Group {
    std::vector<int> members;
    double cap = 0.0;
  };

  Eigen::VectorXd upper;
  std::vector<Group> groups;

  /// Non-negativity, per-variable caps and group caps, each to `rel_tol`
  /// relative to its cap.
  bool contains(const Eigen::VectorXd& p, double rel_tol = 1e-9) const;
  std::vector<std::string> violations(const Eigen::VectorXd& p, double rel_tol = 1e-9) const;
};

/// The generic feasible set: per-cell DL sum <= P_DL_max, each UL power <=
/// P_UL_max, all powers >= 0.
PowerLimits generic_power_limits(const std::vector<int>& dl_cell, int n_cells, int n_ul,
                                 const SimConfig& cfg);

}  // namespace fdnoma
