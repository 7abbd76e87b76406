#pragma once

#include <vector>

#include <Eigen/Core>

#include "fdnoma/link_model.hpp"
#include "fdnoma/solver_result.hpp"

namespace fdnoma {

/// Largest instance the exhaustive search accepts.
inline constexpr int kGridSearchMaxVariables = 6;

/// Grid points for one power variable, ascending: 0 and
/// cap * 10^(-4k/levels) for k = levels..0. Grids for levels 16, 64 and 256
/// are nested.
std::vector<double> grid_levels(double cap, int levels);

/// Rounds every coordinate of p down to its nearest grid point.
Eigen::VectorXd snap_down_to_grid(const LinkModel& model, const Eigen::VectorXd& p, int levels);

/// Exhaustive search over the Cartesian power grid, keeping points inside the
/// sum caps and meeting every rate demand. Throws std::invalid_argument for
/// more than kGridSearchMaxVariables variables.
SolverResult grid_search(const LinkModel& model, double r_min, int levels);
SolverResult grid_search(const ChannelSet& ch, const SicOrder& order, SchemeKind scheme,
                         const SimConfig& cfg, int levels);

}  // namespace fdnoma
