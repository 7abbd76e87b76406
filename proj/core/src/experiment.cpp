#include "fdnoma/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fdnoma/sca.hpp"
#include "fdnoma/schemes.hpp"
#include "fdnoma/sinr.hpp"
#include "fdnoma/units.hpp"

namespace fdnoma {

std::string_view sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::SnrRatioDb: return "snr_ratio_db";
    case SweepVariable::KappaSiDb: return "kappa_si_db";
  }
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  if (name == "snr_ratio_db") return SweepVariable::SnrRatioDb;
  if (name == "kappa_si_db") return SweepVariable::KappaSiDb;
  return std::nullopt;
}

SweepSpec fig5a_sweep() {
  SweepSpec spec;
  spec.variable = SweepVariable::SnrRatioDb;
  for (int v = 60; v <= 120; v += 10) spec.values.push_back(v);
  spec.ul_power = UlPowerRule::HalfOfDl;
  spec.r_min_bps_hz = 0.0;
  return spec;
}

SweepSpec fig5b_sweep() {
  SweepSpec spec;
  spec.variable = SweepVariable::KappaSiDb;
  for (int v = -130; v <= -60; v += 10) spec.values.push_back(v);
  spec.ul_power = UlPowerRule::HalfOfDl;
  spec.r_min_bps_hz = 0.02;
  return spec;
}

std::vector<ConfigIssue> validate_sweep(const SweepSpec& spec) {
  std::vector<ConfigIssue> issues;
  if (spec.values.empty()) issues.push_back({"sweep_values", "at least one sweep value required"});
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) {
      issues.push_back({"sweep_values", "sweep values must be strictly increasing"});
      break;
    }
  }
  for (double v : spec.values) {
    if (!std::isfinite(v)) issues.push_back({"sweep_values", "sweep values must be finite"});
  }
  if (spec.schemes.empty()) issues.push_back({"schemes", "at least one scheme required"});
  if (spec.n_drops < 1) issues.push_back({"n_drops", "drop count must be positive"});
  if (spec.r_min_bps_hz && !(*spec.r_min_bps_hz >= 0.0)) {
    issues.push_back({"sweep_r_min", "rate demand must be non-negative"});
  }
  return issues;
}

SimConfig sweep_point_config(const SimConfig& base, const SweepSpec& spec, double value) {
  SimConfig cfg = base;
  switch (spec.variable) {
    case SweepVariable::SnrRatioDb: cfg.snr_ratio_db = value; break;
    case SweepVariable::KappaSiDb: cfg.kappa_si_db = value; break;
  }
  if (spec.ul_power == UlPowerRule::HalfOfDl) {
    cfg.p_ul_max_dbm = watts_to_dbm(cfg.p_dl_max_w() / 2.0);
  }
  if (spec.r_min_bps_hz) cfg.r_min_bps_hz = *spec.r_min_bps_hz;
  return cfg;
}

DropOutcome run_drop(const SimConfig& cfg, long drop_index, const std::vector<SchemeKind>& schemes) {
  DropOutcome out;
  out.drop_index = drop_index;
  out.topology = generate_drop(cfg, drop_index);
  out.channels = build_channels(out.topology, cfg, drop_index);
  out.order = sic_order(out.channels, out.topology);

  for (SchemeKind scheme : schemes) {
    SchemeOutcome so;
    so.scheme = scheme;
    const LinkModel model = build_link_model(out.channels, out.order, scheme, cfg);
    so.result = evaluate_scheme(model, cfg, drop_index);
    if (so.result.status == SolverStatus::BudgetExhausted) {
      if (cfg.fallback_to_sca) {
        SolverResult sca = solve_sca(model, cfg, drop_index);
        so.fallback = true;
        if (sca.feasible && (!so.result.feasible ||
                             sca.objective_bps_hz > so.result.objective_bps_hz)) {
          sca.iterations += so.result.iterations;
          so.result = std::move(sca);
        }
      } else {
        so.budget_exhausted = true;
      }
    }
    so.throughput_bps_hz = so.result.objective_bps_hz;
    if (cfg.strict_decodability && so.result.feasible &&
        scheme_traits(scheme).access == AccessMode::Noma) {
      const std::vector<double> rates =
          strict_decodability_rates(so.result.p, model, out.channels, out.order);
      so.throughput_bps_hz = std::accumulate(rates.begin(), rates.end(), 0.0);
    }
    out.schemes.push_back(std::move(so));
  }
  return out;
}

const SweepPoint& SweepResult::at(std::size_t value_index, SchemeKind scheme) const {
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    if (schemes[s] == scheme) return points.at(value_index * schemes.size() + s);
  }
  throw std::out_of_range("scheme not in sweep");
}

std::vector<double> SweepResult::series(SchemeKind scheme) const {
  std::vector<double> out;
  for (std::size_t v = 0; v < values.size(); ++v) out.push_back(at(v, scheme).mean_tput);
  return out;
}

int SweepResult::total_fallbacks() const {
  int n = 0;
  for (const auto& p : points) n += p.n_fallback;
  return n;
}

int SweepResult::total_budget_exhausted() const {
  int n = 0;
  for (const auto& p : points) n += p.n_budget_exhausted;
  return n;
}

bool SweepResult::infeasible_everywhere() const {
  return std::all_of(points.begin(), points.end(),
                     [](const SweepPoint& p) { return p.n_feasible == 0; });
}

namespace {

struct DropSummary {
  bool feasible = false;
  double throughput = 0.0;
  long iterations = 0;
  bool fallback = false;
  bool budget_exhausted = false;
};

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const SimConfig& cfg, int workers,
                      const ProgressFn& progress) {
  const auto issues = validate_sweep(spec);
  if (!issues.empty()) throw std::invalid_argument(issues.front().message);

  const std::size_t n_values = spec.values.size();
  const std::size_t n_schemes = spec.schemes.size();
  const std::size_t n_drops = static_cast<std::size_t>(spec.n_drops);
  const std::size_t n_tasks = n_values * n_drops;

  std::vector<SimConfig> point_cfg;
  for (double v : spec.values) point_cfg.push_back(sweep_point_config(cfg, spec, v));

  // slots[(v * n_drops + d) * n_schemes + s]; each task writes only its own.
  std::vector<DropSummary> slots(n_tasks * n_schemes);
  std::atomic<std::size_t> next{0};
  std::atomic<long> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= n_tasks) return;
      const std::size_t v = task / n_drops;
      const long d = static_cast<long>(task % n_drops);
      try {
        DropOutcome drop = run_drop(point_cfg[v], d, spec.schemes);
        for (std::size_t s = 0; s < n_schemes; ++s) {
          const SchemeOutcome& so = drop.schemes[s];
          slots[task * n_schemes + s] = {so.result.feasible, so.throughput_bps_hz,
                                         so.result.iterations, so.fallback, so.budget_exhausted};
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_tasks);
        return;
      }
      const long finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, static_cast<long>(n_tasks));
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(n_tasks)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  result.variable = spec.variable;
  result.values = spec.values;
  result.schemes = spec.schemes;
  for (std::size_t v = 0; v < n_values; ++v) {
    for (std::size_t s = 0; s < n_schemes; ++s) {
      SweepPoint pt;
      pt.scheme = spec.schemes[s];
      pt.value_db = spec.values[v];
      pt.n_drops = spec.n_drops;
      double sum = 0.0;
      double iters = 0.0;
      for (std::size_t d = 0; d < n_drops; ++d) {
        const DropSummary& ds = slots[((v * n_drops) + d) * n_schemes + s];
        pt.n_fallback += ds.fallback ? 1 : 0;
        pt.n_budget_exhausted += ds.budget_exhausted ? 1 : 0;
        if (!ds.feasible) continue;
        ++pt.n_feasible;
        sum += ds.throughput;
        iters += static_cast<double>(ds.iterations);
      }
      if (pt.n_feasible > 0) {
        pt.mean_tput = sum / pt.n_feasible;
        pt.mean_iters = iters / pt.n_feasible;
        if (pt.n_feasible > 1) {
          double ss = 0.0;
          for (std::size_t d = 0; d < n_drops; ++d) {
            const DropSummary& ds = slots[((v * n_drops) + d) * n_schemes + s];
            if (ds.feasible) ss += (ds.throughput - pt.mean_tput) * (ds.throughput - pt.mean_tput);
          }
          pt.stderr_tput = std::sqrt(ss / (pt.n_feasible - 1) / pt.n_feasible);
        }
      }
      result.points.push_back(pt);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "scheme,sweep_var,sweep_value_db,mean_tput,stderr,n_feasible,mean_iters\n";
  char buf[256];
  for (const auto& p : result.points) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.6g,%.12g,%.12g,%d,%.6g\n",
                  std::string(scheme_name(p.scheme)).c_str(),
                  std::string(sweep_variable_name(result.variable)).c_str(), p.value_db,
                  p.mean_tput, p.stderr_tput, p.n_feasible, p.mean_iters);
    out << buf;
  }
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  write_sweep_csv(os, result);
  return os.str();
}

namespace {

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(detail::trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

SettingStatus apply_sweep_setting(SweepSpec& spec, std::string_view key, std::string_view value,
                                  std::string* error) {
  auto bad = [&](const std::string& what) {
    if (error) *error = what;
    return SettingStatus::BadValue;
  };
  value = detail::trim(value);
  if (key == "sweep_variable") {
    auto v = parse_sweep_variable(value);
    if (!v) return bad("expected snr_ratio_db or kappa_si_db");
    spec.variable = *v;
    return SettingStatus::Applied;
  }
  if (key == "sweep_values") {
    std::vector<double> values;
    for (auto item : split_list(value)) {
      double x = 0.0;
      if (!detail::parse_double(item, x)) return bad("not a number: '" + std::string(item) + "'");
      values.push_back(x);
    }
    spec.values = std::move(values);
    return SettingStatus::Applied;
  }
  if (key == "schemes") {
    std::vector<SchemeKind> schemes;
    for (auto item : split_list(value)) {
      auto s = parse_scheme(item);
      if (!s) return bad("unknown scheme '" + std::string(item) + "'");
      schemes.push_back(*s);
    }
    spec.schemes = std::move(schemes);
    return SettingStatus::Applied;
  }
  if (key == "ul_power_rule") {
    if (value == "configured") spec.ul_power = UlPowerRule::Configured;
    else if (value == "half_of_dl") spec.ul_power = UlPowerRule::HalfOfDl;
    else return bad("expected configured or half_of_dl");
    return SettingStatus::Applied;
  }
  if (key == "sweep_r_min") {
    if (value == "none") {
      spec.r_min_bps_hz.reset();
      return SettingStatus::Applied;
    }
    double x = 0.0;
    if (!detail::parse_double(value, x)) return bad("not a number");
    spec.r_min_bps_hz = x;
    return SettingStatus::Applied;
  }
  return SettingStatus::UnknownKey;
}

SettingStatus apply_experiment_setting(ExperimentConfig& exp, std::string_view key,
                                       std::string_view value, std::string* error) {
  SettingStatus s = apply_sweep_setting(exp.sweep, key, value, error);
  if (s != SettingStatus::UnknownKey) return s;
  s = apply_setting(exp.sim, key, value, error);
  if (s == SettingStatus::Applied && key == "n_drops") exp.sweep.n_drops = exp.sim.n_drops;
  return s;
}

ExperimentConfig read_experiment_config(std::istream& in, std::vector<ConfigIssue>& issues) {
  ExperimentConfig exp;
  exp.sweep.n_drops = exp.sim.n_drops;
  for (const KeyValue& kv : read_key_values(in, issues)) {
    std::string error;
    switch (apply_experiment_setting(exp, kv.key, kv.value, &error)) {
      case SettingStatus::Applied: break;
      case SettingStatus::UnknownKey:
        issues.push_back({kv.key, "line " + std::to_string(kv.line) + ": unknown key"});
        break;
      case SettingStatus::BadValue:
        issues.push_back({kv.key, "line " + std::to_string(kv.line) + ": " + error});
        break;
    }
  }
  return exp;
}

}  // namespace fdnoma
