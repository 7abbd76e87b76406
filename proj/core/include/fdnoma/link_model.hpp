#pragma once

#include <array>
#include <string_view>

#include <Eigen/Core>

#include "fdnoma/channels.hpp"
#include "fdnoma/config.hpp"
#include "fdnoma/power_allocation.hpp"
#include "fdnoma/scheme.hpp"
#include "fdnoma/sic_order.hpp"

namespace fdnoma {

/// Interference categories tracked per user.
enum class Interference {
  IntraNoma,  ///< same-cell NOMA co-channel users not removed by SIC
  DlToUl,     ///< other RRHs' DL transmissions at a UL receiver
  UlToDl,     ///< UL users at a DL receiver (intra- and inter-cell)
  DlToDl,     ///< other RRHs' DL transmissions at a DL receiver
  UlToUl,     ///< other cells' UL users at a UL receiver
  Self,       ///< residual self-interference at the serving RRH
};

inline constexpr int kInterferenceKinds = 6;
std::string_view interference_name(Interference kind);

/// The SINR model of one scheme on one drop, in affine form over the flat
/// power vector p = [dl powers, ul powers]:
///
///   S_d(p) = signal_gain[d] * p[d]
///   I_d(p) = sum_j coupling(d, j) * p[j]      (coupling(d, d) == 0)
///   SINR_d = S_d / (noise_w + I_d),  rate_d = weight[d] * log2(1 + SINR_d)
///
/// Each coupling entry is split by interference category so per-user
/// breakdowns can be reported.
struct LinkModel {
  SchemeKind scheme = SchemeKind::CFdbNomaOptimal;
  int n_dl = 0;
  int n_ul = 0;
  int n_subbands = 1;  ///< FdbOma subband count, 1 otherwise
  double noise_w = 0.0;
  Eigen::VectorXd signal_gain;
  std::array<Eigen::MatrixXd, kInterferenceKinds> coupling_by_kind;
  Eigen::MatrixXd coupling;  ///< sum over categories
  Eigen::VectorXd weight;
  PowerLimits limits;

  int n_users() const { return n_dl + n_ul; }
  bool is_dl(int user) const { return user < n_dl; }
  const Eigen::MatrixXd& coupling_of(Interference kind) const {
    return coupling_by_kind[static_cast<int>(kind)];
  }
};

/// Composes signal and interference terms for the given scheme.
///
/// FD NOMA (CFdbNoma*, FdbNoma): DL user of rank r hears stronger-ranked
/// co-users (it cancels weaker ones), other cells' total DL power, and every
/// UL user. UL user of rank r hears weaker same-cell UL users, other cells'
/// UL users, kappa_SI * g_si * (own cell DL power), and
/// kappa_eff * g_rrh_rrh * (other cells' DL power), where kappa_eff = kappa_DU
/// with C-RAN cancellation and 1 without it.
///
/// HdbNoma: DL and UL use orthogonal halves; the cross-direction and
/// self-interference terms vanish and every weight is 1/2.
///
/// FdbOma: the k-th ranked DL and UL users of every cell share subband k of K;
/// no intra-cell NOMA term, weights 1/K, each DL power capped at P_DL_max/K,
/// cross-direction and inter-cell terms only within a subband.
LinkModel build_link_model(const ChannelSet& ch, const SicOrder& order, SchemeKind scheme,
                           const SimConfig& cfg);

}  // namespace fdnoma
