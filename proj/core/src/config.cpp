#include "fdnoma/config.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "fdnoma/units.hpp"

namespace fdnoma {

double SimConfig::p_dl_max_w() const { return dbm_to_watts(p_dl_max_dbm); }
double SimConfig::p_ul_max_w() const { return dbm_to_watts(p_ul_max_dbm); }
double SimConfig::noise_w() const { return p_dl_max_w() / db_to_linear(snr_ratio_db); }
double SimConfig::kappa_si() const { return db_to_linear(kappa_si_db); }
double SimConfig::kappa_du() const { return db_to_linear(kappa_du_db); }
double SimConfig::si_gain() const { return db_to_linear(si_channel_gain_db); }

namespace detail {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_int(std::string_view text, long& out) {
  text = trim(text);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  text = trim(text);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

bool parse_bool(std::string_view text, bool& out) {
  text = trim(text);
  if (text == "true" || text == "on" || text == "1" || text == "yes") {
    out = true;
    return true;
  }
  if (text == "false" || text == "off" || text == "0" || text == "no") {
    out = false;
    return true;
  }
  return false;
}

}  // namespace detail

namespace {

void require(std::vector<ConfigIssue>& issues, bool ok, const char* field, const char* message) {
  if (!ok) issues.push_back({field, message});
}

}  // namespace

std::vector<ConfigIssue> validate_config(const SimConfig& cfg) {
  std::vector<ConfigIssue> issues;
  require(issues, cfg.area_radius_m > 0.0, "area_radius_m", "radius must be positive");
  require(issues, cfg.pathloss_exponent > 0.0, "pathloss_exponent", "exponent must be positive");
  require(issues, cfg.min_distance_m > 0.0, "min_distance_m", "minimum distance must be positive");
  require(issues, cfg.n_cells > 0, "n_cells", "cell count must be positive");
  require(issues, cfg.n_dl_users > 0, "n_dl_users", "DL user count must be positive");
  require(issues, cfg.n_ul_users > 0, "n_ul_users", "UL user count must be positive");
  if (cfg.n_cells > 0) {
    require(issues, cfg.n_dl_users % cfg.n_cells == 0, "n_dl_users",
            "n_dl_users not divisible by n_cells");
    require(issues, cfg.n_ul_users % cfg.n_cells == 0, "n_ul_users",
            "n_ul_users not divisible by n_cells");
  }
  require(issues, std::isfinite(cfg.p_dl_max_dbm), "p_dl_max_dbm", "power must be finite");
  require(issues, std::isfinite(cfg.p_ul_max_dbm), "p_ul_max_dbm", "power must be finite");
  require(issues, std::isfinite(cfg.snr_ratio_db), "snr_ratio_db", "ratio must be finite");
  require(issues, std::isfinite(cfg.kappa_si_db), "kappa_si_db", "coefficient must be finite");
  require(issues, std::isfinite(cfg.kappa_du_db), "kappa_du_db", "coefficient must be finite");
  require(issues, std::isfinite(cfg.si_channel_gain_db), "si_channel_gain_db",
          "gain must be finite");
  require(issues, cfg.r_min_bps_hz >= 0.0 && std::isfinite(cfg.r_min_bps_hz), "r_min_bps_hz",
          "rate demand must be non-negative");
  require(issues, cfg.solver_tol > 0.0, "solver_tol", "tolerance must be positive");
  require(issues, cfg.n_drops >= 1, "n_drops", "drop count must be positive");
  require(issues, cfg.polyblock_vertex_budget >= 1, "polyblock_vertex_budget",
          "vertex budget must be positive");
  require(issues, cfg.sca_max_iterations >= 1, "sca_max_iterations",
          "iteration limit must be positive");
  require(issues, cfg.sca_restarts >= 1, "sca_restarts", "restart count must be positive");
  return issues;
}

SettingStatus apply_setting(SimConfig& cfg, std::string_view key, std::string_view value,
                            std::string* error) {
  auto bad = [&](const char* what) {
    if (error) *error = std::string(key) + ": expected " + what + ", got '" + std::string(value) + "'";
    return SettingStatus::BadValue;
  };
  auto set_double = [&](double& field) {
    double v = 0.0;
    if (!detail::parse_double(value, v)) return bad("a number");
    field = v;
    return SettingStatus::Applied;
  };
  auto set_int = [&](auto& field) {
    long v = 0;
    if (!detail::parse_int(value, v)) return bad("an integer");
    field = static_cast<std::remove_reference_t<decltype(field)>>(v);
    return SettingStatus::Applied;
  };
  auto set_bool = [&](bool& field) {
    if (!detail::parse_bool(value, field)) return bad("true/false");
    return SettingStatus::Applied;
  };

  if (key == "area_radius_m") return set_double(cfg.area_radius_m);
  if (key == "pathloss_exponent") return set_double(cfg.pathloss_exponent);
  if (key == "min_distance_m") return set_double(cfg.min_distance_m);
  if (key == "n_cells") return set_int(cfg.n_cells);
  if (key == "n_dl_users") return set_int(cfg.n_dl_users);
  if (key == "n_ul_users") return set_int(cfg.n_ul_users);
  if (key == "p_dl_max_dbm") return set_double(cfg.p_dl_max_dbm);
  if (key == "p_ul_max_dbm") return set_double(cfg.p_ul_max_dbm);
  if (key == "si_channel_gain_db") return set_double(cfg.si_channel_gain_db);
  if (key == "kappa_si_db") return set_double(cfg.kappa_si_db);
  if (key == "kappa_du_db") return set_double(cfg.kappa_du_db);
  if (key == "snr_ratio_db") return set_double(cfg.snr_ratio_db);
  if (key == "r_min_bps_hz") return set_double(cfg.r_min_bps_hz);
  if (key == "solver_tol") return set_double(cfg.solver_tol);
  if (key == "n_drops") return set_int(cfg.n_drops);
  if (key == "strict_decodability") return set_bool(cfg.strict_decodability);
  if (key == "polyblock_vertex_budget") return set_int(cfg.polyblock_vertex_budget);
  if (key == "sca_max_iterations") return set_int(cfg.sca_max_iterations);
  if (key == "sca_restarts") return set_int(cfg.sca_restarts);
  if (key == "fallback_to_sca") return set_bool(cfg.fallback_to_sca);
  if (key == "base_seed") {
    if (!detail::parse_u64(value, cfg.base_seed)) return bad("an unsigned 64-bit integer");
    return SettingStatus::Applied;
  }
  if (key == "scheme") {
    auto kind = parse_scheme(detail::trim(value));
    if (!kind) return bad("a scheme name");
    cfg.scheme = *kind;
    return SettingStatus::Applied;
  }
  if (key == "sca_init") {
    const auto v = detail::trim(value);
    if (v == "tenth_of_cap") {
      cfg.sca_init = ScaInit::TenthOfCap;
    } else if (v == "minimum_power") {
      cfg.sca_init = ScaInit::MinimumPower;
    } else {
      return bad("tenth_of_cap or minimum_power");
    }
    return SettingStatus::Applied;
  }
  if (error) *error = "unknown key '" + std::string(key) + "'";
  return SettingStatus::UnknownKey;
}

bool split_assignment(std::string_view text, KeyValue& out) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) return false;
  out.key = std::string(detail::trim(text.substr(0, eq)));
  out.value = std::string(detail::trim(text.substr(eq + 1)));
  return !out.key.empty();
}

std::vector<KeyValue> read_key_values(std::istream& in, std::vector<ConfigIssue>& issues) {
  std::vector<KeyValue> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = detail::trim(view);
    if (view.empty()) continue;
    KeyValue kv;
    if (!split_assignment(view, kv)) {
      issues.push_back({"line " + std::to_string(line_no), "expected 'key = value'"});
      continue;
    }
    kv.line = line_no;
    entries.push_back(std::move(kv));
  }
  return entries;
}

std::string format_config(const SimConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "area_radius_m = " << cfg.area_radius_m << '\n'
     << "pathloss_exponent = " << cfg.pathloss_exponent << '\n'
     << "min_distance_m = " << cfg.min_distance_m << '\n'
     << "n_cells = " << cfg.n_cells << '\n'
     << "n_dl_users = " << cfg.n_dl_users << '\n'
     << "n_ul_users = " << cfg.n_ul_users << '\n'
     << "p_dl_max_dbm = " << cfg.p_dl_max_dbm << '\n'
     << "p_ul_max_dbm = " << cfg.p_ul_max_dbm << '\n'
     << "si_channel_gain_db = " << cfg.si_channel_gain_db << '\n'
     << "kappa_si_db = " << cfg.kappa_si_db << '\n'
     << "kappa_du_db = " << cfg.kappa_du_db << '\n'
     << "snr_ratio_db = " << cfg.snr_ratio_db << '\n'
     << "r_min_bps_hz = " << cfg.r_min_bps_hz << '\n'
     << "solver_tol = " << cfg.solver_tol << '\n'
     << "scheme = " << scheme_name(cfg.scheme) << '\n'
     << "n_drops = " << cfg.n_drops << '\n'
     << "base_seed = " << cfg.base_seed << '\n'
     << "strict_decodability = " << (cfg.strict_decodability ? "true" : "false") << '\n'
     << "polyblock_vertex_budget = " << cfg.polyblock_vertex_budget << '\n'
     << "sca_max_iterations = " << cfg.sca_max_iterations << '\n'
     << "sca_init = "
     << (cfg.sca_init == ScaInit::TenthOfCap ? "tenth_of_cap" : "minimum_power") << '\n'
     << "sca_restarts = " << cfg.sca_restarts << '\n'
     << "fallback_to_sca = " << (cfg.fallback_to_sca ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace fdnoma
