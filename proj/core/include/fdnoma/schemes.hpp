#pragma once

#include "fdnoma/link_model.hpp"
#include "fdnoma/solver_result.hpp"

namespace fdnoma {

/// Power-optimizes one scheme: CFdbNomaSuboptimal by SCA, every other scheme
/// by polyblock on its own SINR model.
SolverResult evaluate_scheme(const LinkModel& model, const SimConfig& cfg, long drop_index = 0);
SolverResult evaluate_scheme(const ChannelSet& ch, const SicOrder& order, SchemeKind scheme,
                             const SimConfig& cfg, long drop_index = 0);

}  // namespace fdnoma
