#include "fdnoma/link_model.hpp"

#include <algorithm>

namespace fdnoma {

std::string_view interference_name(Interference kind) {
  switch (kind) {
    case Interference::IntraNoma: return "intra_noma";
    case Interference::DlToUl: return "dl_to_ul";
    case Interference::UlToDl: return "ul_to_dl";
    case Interference::DlToDl: return "dl_to_dl";
    case Interference::UlToUl: return "ul_to_ul";
    case Interference::Self: return "self";
  }
  return "unknown";
}

namespace {

double kappa_effective(SchemeKind scheme, const SimConfig& cfg) {
  switch (scheme_traits(scheme).du_cancellation) {
    case DuCancellation::Residual: return cfg.kappa_du();
    case DuCancellation::None: return 1.0;
    case DuCancellation::NotApplicable: return 0.0;
  }
  return 1.0;
}

}  // namespace

LinkModel build_link_model(const ChannelSet& ch, const SicOrder& order, SchemeKind scheme,
                           const SimConfig& cfg) {
  const SchemeTraits traits = scheme_traits(scheme);
  const bool full_duplex = traits.duplex == DuplexMode::Full;
  const bool oma = traits.access == AccessMode::Oma;
  const int n_cells = order.n_cells();
  const int n_dl = order.n_dl();
  const int n_ul = order.n_ul();
  const int n = n_dl + n_ul;
  const double kappa_si = cfg.kappa_si();
  const double kappa_eff = kappa_effective(scheme, cfg);

  LinkModel m;
  m.scheme = scheme;
  m.n_dl = n_dl;
  m.n_ul = n_ul;
  m.noise_w = cfg.noise_w();
  m.signal_gain.resize(n);
  for (auto& b : m.coupling_by_kind) b = Eigen::MatrixXd::Zero(n, n);
  auto at = [&](Interference kind) -> Eigen::MatrixXd& {
    return m.coupling_by_kind[static_cast<int>(kind)];
  };
  auto ul_var = [&](int u) { return n_dl + u; };

  if (oma) {
    for (int c = 0; c < n_cells; ++c) {
      m.n_subbands = std::max<int>(
          m.n_subbands, static_cast<int>(std::max(order.dl_ranked[c].size(), order.ul_ranked[c].size())));
    }
  }
  // Two users can interfere only when they share a resource: always under
  // NOMA, matching subband index under OMA.
  auto share_dl_dl = [&](int a, int b) { return !oma || order.dl_rank[a] == order.dl_rank[b]; };
  auto share_ul_ul = [&](int a, int b) { return !oma || order.ul_rank[a] == order.ul_rank[b]; };
  auto share_ul_dl = [&](int u, int d) { return !oma || order.ul_rank[u] == order.dl_rank[d]; };

  for (int d = 0; d < n_dl; ++d) {
    const int c = order.dl_cell[d];
    m.signal_gain[d] = ch.rrh_dl(c, d);
    for (int e = 0; e < n_dl; ++e) {
      if (e == d) continue;
      const int ce = order.dl_cell[e];
      if (ce == c) {
        if (!oma && order.dl_rank[e] < order.dl_rank[d]) {
          at(Interference::IntraNoma)(d, e) = ch.rrh_dl(c, d);
        }
      } else if (share_dl_dl(d, e)) {
        at(Interference::DlToDl)(d, e) = ch.rrh_dl(ce, d);
      }
    }
    if (full_duplex) {
      for (int u = 0; u < n_ul; ++u) {
        if (share_ul_dl(u, d)) at(Interference::UlToDl)(d, ul_var(u)) = ch.ul_dl(u, d);
      }
    }
  }

  for (int u = 0; u < n_ul; ++u) {
    const int c = order.ul_cell[u];
    const int row = ul_var(u);
    m.signal_gain[row] = ch.ul_rrh(u, c);
    for (int v = 0; v < n_ul; ++v) {
      if (v == u) continue;
      if (order.ul_cell[v] == c) {
        if (!oma && order.ul_rank[v] > order.ul_rank[u]) {
          at(Interference::IntraNoma)(row, ul_var(v)) = ch.ul_rrh(v, c);
        }
      } else if (share_ul_ul(u, v)) {
        at(Interference::UlToUl)(row, ul_var(v)) = ch.ul_rrh(v, c);
      }
    }
    if (full_duplex) {
      for (int d = 0; d < n_dl; ++d) {
        if (!share_ul_dl(u, d)) continue;
        const int cd = order.dl_cell[d];
        if (cd == c) {
          at(Interference::Self)(row, d) = kappa_si * ch.si[c];
        } else {
          at(Interference::DlToUl)(row, d) = kappa_eff * ch.rrh_rrh(cd, c);
        }
      }
    }
  }

  m.coupling = Eigen::MatrixXd::Zero(n, n);
  for (const auto& b : m.coupling_by_kind) m.coupling += b;

  double w = 1.0;
  if (!full_duplex) w = 0.5;
  if (oma) w = 1.0 / m.n_subbands;
  m.weight = Eigen::VectorXd::Constant(n, w);

  m.limits = generic_power_limits(order.dl_cell, n_cells, n_ul, cfg);
  if (oma) m.limits.upper.head(n_dl).setConstant(cfg.p_dl_max_w() / m.n_subbands);
  // Drop sum caps already implied by the per-variable caps.
  std::erase_if(m.limits.groups, [&](const PowerLimits::Group& g) {
    double total = 0.0;
    for (int j : g.members) total += m.limits.upper[j];
    return total <= g.cap;
  });
  return m;
}

}  // namespace fdnoma
