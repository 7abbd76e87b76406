#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fdnoma/scheme.hpp"

namespace fdnoma {

/// How SCA picks its starting point.
enum class ScaInit {
  TenthOfCap,    ///< every power at 10% of its cap, minimal-power point if rate-infeasible
  MinimumPower,  ///< minimal power vector meeting the rate targets (fixed-point oracle)
};

/// Scenario parameters. Defaults are the reference simulation setup.
struct SimConfig {
  double area_radius_m = 300.0;
  double pathloss_exponent = 3.5;
  double min_distance_m = 1.0;
  int n_cells = 2;
  int n_dl_users = 4;
  int n_ul_users = 4;
  double p_dl_max_dbm = 30.0;
  double p_ul_max_dbm = 27.0;
  double si_channel_gain_db = 0.0;
  double kappa_si_db = -110.0;
  double kappa_du_db = -110.0;
  double snr_ratio_db = 90.0;  ///< P_DL_max / N0
  double r_min_bps_hz = 0.0;
  double solver_tol = 1e-3;
  SchemeKind scheme = SchemeKind::CFdbNomaOptimal;
  int n_drops = 50;
  std::uint64_t base_seed = 1;
  bool strict_decodability = false;

  // Solver knobs.
  long polyblock_vertex_budget = 200000;
  int sca_max_iterations = 500;
  ScaInit sca_init = ScaInit::TenthOfCap;
  int sca_restarts = 1;
  bool fallback_to_sca = true;  ///< polyblock schemes fall back to SCA on budget exhaustion

  double p_dl_max_w() const;
  double p_ul_max_w() const;
  double noise_w() const;  ///< N0 = P_DL_max / 10^(snr_ratio_db/10)
  double kappa_si() const;
  double kappa_du() const;
  double si_gain() const;
};

struct ConfigIssue {
  std::string field;
  std::string message;
};

/// Every violated invariant, one entry per problem. Empty means valid.
std::vector<ConfigIssue> validate_config(const SimConfig& cfg);

enum class SettingStatus { Applied, UnknownKey, BadValue };

/// Applies one `key = value` setting to a SimConfig.
SettingStatus apply_setting(SimConfig& cfg, std::string_view key, std::string_view value,
                            std::string* error = nullptr);

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Splits a `key = value` text into entries. Blank lines and `#` comments are
/// skipped; malformed lines are reported in `issues`.
std::vector<KeyValue> read_key_values(std::istream& in, std::vector<ConfigIssue>& issues);

/// Splits `key=value` (as used by `--set`).
bool split_assignment(std::string_view text, KeyValue& out);

std::string format_config(const SimConfig& cfg);

namespace detail {
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long& out);
bool parse_u64(std::string_view text, std::uint64_t& out);
bool parse_bool(std::string_view text, bool& out);
std::string_view trim(std::string_view text);
}  // namespace detail

}  // namespace fdnoma
