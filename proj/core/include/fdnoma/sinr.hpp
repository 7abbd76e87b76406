#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "fdnoma/link_model.hpp"

namespace fdnoma {

/// Per-user received powers and resulting SINR/rate.
struct SinrBreakdown {
  double signal_w = 0.0;
  double noise_w = 0.0;
  std::array<double, kInterferenceKinds> interference_w{};  ///< indexed by Interference
  double sinr = 0.0;
  double rate_bps_hz = 0.0;

  double interference(Interference kind) const {
    return interference_w[static_cast<int>(kind)];
  }
  double total_interference() const;
};

/// Throws std::invalid_argument when p is outside the model's power limits.
std::vector<SinrBreakdown> sinr_breakdown(const PowerAllocation& p, const LinkModel& model);
std::vector<SinrBreakdown> sinr_breakdown(const PowerAllocation& p, const ChannelSet& ch,
                                          const SicOrder& order, SchemeKind scheme,
                                          const SimConfig& cfg);

/// Sum of weighted rates over every DL and UL user.
double sum_throughput(const PowerAllocation& p, const LinkModel& model);
double sum_throughput(const PowerAllocation& p, const ChannelSet& ch, const SicOrder& order,
                      SchemeKind scheme, const SimConfig& cfg);

// Unchecked evaluation on flat power vectors, for solver inner loops.
Eigen::VectorXd sinr_vector(const LinkModel& model, const Eigen::VectorXd& p);
double objective_value(const LinkModel& model, const Eigen::VectorXd& p);

struct RateCheck {
  bool satisfied = true;
  std::vector<double> slack;  ///< rate_d - r_min per user
};

/// rate_d >= r_min - tol for every user.
RateCheck rate_constraints_satisfied(const PowerAllocation& p, const LinkModel& model, double r_min,
                                     double tol);

/// Per-user weighted rates where a DL message must also be decodable at every
/// stronger-ranked co-user that cancels it: the DL rate uses the minimum SINR
/// over those receivers. UL rates are unchanged. Evaluation only.
std::vector<double> strict_decodability_rates(const PowerAllocation& p, const LinkModel& model,
                                              const ChannelSet& ch, const SicOrder& order);

/// CSV with one row per user and one column per interference category.
void write_breakdown_csv(std::ostream& out, const LinkModel& model,
                         const std::vector<SinrBreakdown>& rows);

}  // namespace fdnoma
