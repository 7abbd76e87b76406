#include "fdnoma/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fdnoma {

double SinrBreakdown::total_interference() const {
  double total = 0.0;
  for (double v : interference_w) total += v;
  return total;
}

std::vector<SinrBreakdown> sinr_breakdown(const PowerAllocation& p, const LinkModel& model) {
  const Eigen::VectorXd x = p.flat();
  if (p.dl_w.size() != static_cast<std::size_t>(model.n_dl) ||
      p.ul_w.size() != static_cast<std::size_t>(model.n_ul)) {
    throw std::invalid_argument("sinr_breakdown: power vector does not match the model");
  }
  if (auto v = model.limits.violations(x); !v.empty()) {
    throw std::invalid_argument("sinr_breakdown: power allocation infeasible: " + v.front());
  }
  std::vector<SinrBreakdown> rows(model.n_users());
  for (int d = 0; d < model.n_users(); ++d) {
    SinrBreakdown& row = rows[d];
    row.signal_w = model.signal_gain[d] * x[d];
    row.noise_w = model.noise_w;
    for (int k = 0; k < kInterferenceKinds; ++k) {
      row.interference_w[k] = model.coupling_by_kind[k].row(d).dot(x);
    }
    row.sinr = row.signal_w / (row.noise_w + row.total_interference());
    row.rate_bps_hz = model.weight[d] * std::log2(1.0 + row.sinr);
  }
  return rows;
}

std::vector<SinrBreakdown> sinr_breakdown(const PowerAllocation& p, const ChannelSet& ch,
                                          const SicOrder& order, SchemeKind scheme,
                                          const SimConfig& cfg) {
  return sinr_breakdown(p, build_link_model(ch, order, scheme, cfg));
}

double sum_throughput(const PowerAllocation& p, const LinkModel& model) {
  double total = 0.0;
  for (const auto& row : sinr_breakdown(p, model)) total += row.rate_bps_hz;
  return total;
}

double sum_throughput(const PowerAllocation& p, const ChannelSet& ch, const SicOrder& order,
                      SchemeKind scheme, const SimConfig& cfg) {
  return sum_throughput(p, build_link_model(ch, order, scheme, cfg));
}

Eigen::VectorXd sinr_vector(const LinkModel& model, const Eigen::VectorXd& p) {
  const Eigen::VectorXd interference = model.coupling * p;
  return (model.signal_gain.cwiseProduct(p).array() / (model.noise_w + interference.array()))
      .matrix();
}

double objective_value(const LinkModel& model, const Eigen::VectorXd& p) {
  const Eigen::VectorXd sinr = sinr_vector(model, p);
  double total = 0.0;
  for (Eigen::Index d = 0; d < sinr.size(); ++d) total += model.weight[d] * std::log2(1.0 + sinr[d]);
  return total;
}

RateCheck rate_constraints_satisfied(const PowerAllocation& p, const LinkModel& model, double r_min,
                                     double tol) {
  RateCheck check;
  for (const auto& row : sinr_breakdown(p, model)) {
    const double slack = row.rate_bps_hz - r_min;
    check.slack.push_back(slack);
    if (slack < -tol) check.satisfied = false;
  }
  return check;
}

std::vector<double> strict_decodability_rates(const PowerAllocation& p, const LinkModel& model,
                                              const ChannelSet& ch, const SicOrder& order) {
  if (scheme_traits(model.scheme).access != AccessMode::Noma) {
    throw std::invalid_argument("strict_decodability_rates: scheme is not NOMA");
  }
  const auto rows = sinr_breakdown(p, model);
  const Eigen::VectorXd x = p.flat();
  std::vector<double> rates(rows.size());
  for (std::size_t d = 0; d < rows.size(); ++d) rates[d] = rows[d].rate_bps_hz;

  for (int d = 0; d < model.n_dl; ++d) {
    const int c = order.dl_cell[d];
    const int r = order.dl_rank[d];
    double sinr = rows[d].sinr;
    // Co-user k (rank < r) decodes d's message while ranks < r, including its
    // own, are still superposed; other-cell and UL interference are those seen
    // at k.
    for (int rank_k = 0; rank_k < r; ++rank_k) {
      const int k = order.dl_ranked[c][rank_k];
      double superposed = 0.0;
      for (int rank_e = 0; rank_e < r; ++rank_e) superposed += x[order.dl_ranked[c][rank_e]];
      const double at_k = x[d] * ch.rrh_dl(c, k) /
                          (model.noise_w + superposed * ch.rrh_dl(c, k) +
                           rows[k].interference(Interference::DlToDl) +
                           rows[k].interference(Interference::UlToDl));
      sinr = std::min(sinr, at_k);
    }
    rates[d] = model.weight[d] * std::log2(1.0 + sinr);
  }
  return rates;
}

void write_breakdown_csv(std::ostream& out, const LinkModel& model,
                         const std::vector<SinrBreakdown>& rows) {
  const auto old_precision = out.precision(12);
  out << "user,direction,signal_w,noise_w";
  for (int k = 0; k < kInterferenceKinds; ++k) {
    out << ',' << interference_name(static_cast<Interference>(k)) << "_w";
  }
  out << ",sinr,rate_bps_hz\n";
  for (std::size_t d = 0; d < rows.size(); ++d) {
    const bool dl = model.is_dl(static_cast<int>(d));
    const auto index = dl ? d : d - static_cast<std::size_t>(model.n_dl);
    out << index << ',' << (dl ? "dl" : "ul") << ',' << rows[d].signal_w << ',' << rows[d].noise_w;
    for (double v : rows[d].interference_w) out << ',' << v;
    out << ',' << rows[d].sinr << ',' << rows[d].rate_bps_hz << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fdnoma
