#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdnoma/channels.hpp"
#include "fdnoma/config.hpp"
#include "fdnoma/sic_order.hpp"
#include "fdnoma/solver_result.hpp"
#include "fdnoma/topology.hpp"

namespace fdnoma {

enum class SweepVariable { SnrRatioDb, KappaSiDb };
std::string_view sweep_variable_name(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

/// How the UL cap follows the DL cap at each sweep point.
enum class UlPowerRule {
  Configured,  ///< p_ul_max_dbm as configured
  HalfOfDl,    ///< P_UL_max = P_DL_max / 2
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::SnrRatioDb;
  std::vector<double> values;  ///< dB, strictly increasing
  std::vector<SchemeKind> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  int n_drops = 50;
  UlPowerRule ul_power = UlPowerRule::HalfOfDl;
  std::optional<double> r_min_bps_hz;  ///< overrides the configured demand when set
};

/// Ratio 60..120 dB in 10 dB steps, P_UL = P_DL/2, r_min = 0.
SweepSpec fig5a_sweep();
/// kappa_SI -130..-60 dB in 10 dB steps at 90 dB ratio, P_UL = P_DL/2, r_min = 0.02.
SweepSpec fig5b_sweep();

std::vector<ConfigIssue> validate_sweep(const SweepSpec& spec);

/// Scenario at one sweep value.
SimConfig sweep_point_config(const SimConfig& base, const SweepSpec& spec, double value);

/// One scheme's result on one drop.
struct SchemeOutcome {
  SchemeKind scheme = SchemeKind::CFdbNomaOptimal;
  SolverResult result;
  double throughput_bps_hz = 0.0;  ///< reported value (strict-decodability rates when enabled)
  bool fallback = false;           ///< polyblock budget hit, best of incumbent and SCA kept
  bool budget_exhausted = false;   ///< polyblock budget hit without a fallback
};

struct DropOutcome {
  long drop_index = 0;
  Topology topology;
  ChannelSet channels;
  SicOrder order;
  std::vector<SchemeOutcome> schemes;
};

/// Generates drop `drop_index` once and evaluates every scheme on it.
DropOutcome run_drop(const SimConfig& cfg, long drop_index, const std::vector<SchemeKind>& schemes);

struct SweepPoint {
  SchemeKind scheme = SchemeKind::CFdbNomaOptimal;
  double value_db = 0.0;
  double mean_tput = 0.0;  ///< over feasible drops only
  double stderr_tput = 0.0;
  int n_feasible = 0;
  int n_drops = 0;
  double mean_iters = 0.0;
  int n_fallback = 0;
  int n_budget_exhausted = 0;
};

struct SweepResult {
  SweepVariable variable = SweepVariable::SnrRatioDb;
  std::vector<double> values;
  std::vector<SchemeKind> schemes;
  std::vector<SweepPoint> points;  ///< value-major, schemes in spec order

  const SweepPoint& at(std::size_t value_index, SchemeKind scheme) const;
  std::vector<double> series(SchemeKind scheme) const;  ///< mean_tput per value
  int total_fallbacks() const;
  int total_budget_exhausted() const;
  bool infeasible_everywhere() const;
};

/// Called after each finished drop with (done, total); may be invoked from
/// worker threads, one call at a time.
using ProgressFn = std::function<void(long, long)>;

/// Runs every (value, drop) pair on `workers` threads. The result depends only
/// on (spec, cfg).
SweepResult run_sweep(const SweepSpec& spec, const SimConfig& cfg, int workers = 1,
                      const ProgressFn& progress = {});

/// `scheme,sweep_var,sweep_value_db,mean_tput,stderr,n_feasible,mean_iters`
void write_sweep_csv(std::ostream& out, const SweepResult& result);
std::string sweep_csv(const SweepResult& result);

/// Scenario plus sweep, as read from a config file.
struct ExperimentConfig {
  SimConfig sim;
  SweepSpec sweep = fig5a_sweep();
};

/// Sweep keys: sweep_variable, sweep_values (comma list), schemes (comma
/// list), ul_power_rule (configured | half_of_dl), sweep_r_min.
SettingStatus apply_sweep_setting(SweepSpec& spec, std::string_view key, std::string_view value,
                                  std::string* error = nullptr);

/// Applies one key to whichever part owns it; n_drops feeds both.
SettingStatus apply_experiment_setting(ExperimentConfig& exp, std::string_view key,
                                       std::string_view value, std::string* error = nullptr);

/// Parses a config stream; every malformed line, unknown key or bad value is
/// reported in `issues`.
ExperimentConfig read_experiment_config(std::istream& in, std::vector<ConfigIssue>& issues);

}  // namespace fdnoma
