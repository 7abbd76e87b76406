#include "fdnoma/schemes.hpp"

#include "fdnoma/polyblock.hpp"
#include "fdnoma/sca.hpp"

namespace fdnoma {

SolverResult evaluate_scheme(const LinkModel& model, const SimConfig& cfg, long drop_index) {
  if (model.scheme == SchemeKind::CFdbNomaSuboptimal) return solve_sca(model, cfg, drop_index);
  return solve_polyblock(model, cfg);
}

SolverResult evaluate_scheme(const ChannelSet& ch, const SicOrder& order, SchemeKind scheme,
                             const SimConfig& cfg, long drop_index) {
  return evaluate_scheme(build_link_model(ch, order, scheme, cfg), cfg, drop_index);
}

}  // namespace fdnoma
