// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. Every tolerance used below is pinned in this file.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fdnoma/channels.hpp"
#include "fdnoma/grid_search.hpp"
#include "fdnoma/link_model.hpp"
#include "fdnoma/polyblock.hpp"
#include "fdnoma/sca.hpp"
#include "fdnoma/sic_order.hpp"
#include "fdnoma/sinr.hpp"
#include "fdnoma/surrogate.hpp"
#include "fdnoma/topology.hpp"

namespace {

using namespace fdnoma;
using Clock = std::chrono::steady_clock;

// Criterion 1
constexpr int kOracleDrops = 20;
constexpr int kOracleGridLevels = 256;
constexpr double kOracleSeconds = 60.0;
// Criterion 2
constexpr int kScaDrops = 100;
constexpr double kScaRelGap = 0.02;
constexpr double kScaPassFraction = 0.90;
constexpr double kScaSeconds = 600.0;
// Criterion 3
constexpr double kSweepSeconds = 3600.0;
constexpr double kDefaultSnrDb = 90.0;
// Criterion 4
constexpr double kHdConstancyTol = 1e-9;
// Criterion 6
constexpr int kIdentityDrops = 20;
constexpr double kIdentityTol = 1e-9;
constexpr int kSurrogateRefs = 10;
constexpr int kProbesPerRef = 100;
constexpr double kTangencyTol = 1e-10;
constexpr double kMinorantSlack = 1e-12;
constexpr double kFdRelStep = 1e-6;
constexpr double kGradientTol = 1e-5;
// Criterion 7
constexpr int kParallelWorkers = 4;

struct Line {
  std::string id;
  bool passed;
  std::string detail;
};

std::vector<Line> g_lines;

void report(const std::string& id, bool passed, const std::string& detail) {
  g_lines.push_back({id, passed, detail});
  std::printf("%s  %s  %s\n", passed ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

void info(const std::string& text) {
  std::printf("      info: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SimConfig shaped(int cells, int dl, int ul) {
  SimConfig cfg;
  cfg.n_cells = cells;
  cfg.n_dl_users = dl;
  cfg.n_ul_users = ul;
  return cfg;
}

LinkModel drop_model(const SimConfig& cfg, long drop, SchemeKind scheme) {
  const Topology topo = generate_drop(cfg, drop);
  const ChannelSet ch = build_channels(topo, cfg, drop);
  return build_link_model(ch, sic_order(ch, topo), scheme, cfg);
}

void criterion_oracle() {
  const SimConfig cfg = shaped(1, 1, 1);
  const auto t0 = Clock::now();
  int ok = 0;
  double worst = -1e300;
  for (long drop = 0; drop < kOracleDrops; ++drop) {
    const LinkModel m = drop_model(cfg, drop, SchemeKind::CFdbNomaOptimal);
    const SolverResult poly = solve_polyblock(m, cfg);
    const SolverResult grid = grid_search(m, cfg.r_min_bps_hz, kOracleGridLevels);
    // One grid step in objective terms: what the polyblock point loses when
    // every power is rounded down to the grid.
    const Eigen::VectorXd snapped = snap_down_to_grid(m, poly.p.flat(), kOracleGridLevels);
    const double step = poly.objective_bps_hz - objective_value(m, snapped);
    const double gap = std::abs(poly.objective_bps_hz - grid.objective_bps_hz);
    worst = std::max(worst, gap - (cfg.solver_tol + std::max(step, 0.0)));
    if (poly.feasible && grid.feasible && gap <= cfg.solver_tol + std::max(step, 0.0)) ++ok;
  }
  const double secs = seconds_since(t0);
  report("C1 oracle_equivalence", ok == kOracleDrops && secs < kOracleSeconds,
         fmt("%d/%d drops within solver_tol + one grid step (max gap minus allowance %.3g), "
             "%.1f s (limit %.0f s)",
             ok, kOracleDrops, worst, secs, kOracleSeconds));
}

void criterion_sca() {
  const SimConfig cfg = shaped(1, 2, 1);
  const auto t0 = Clock::now();
  int close = 0;
  int above = 0;
  std::vector<double> optimal(kScaDrops);
  std::vector<LinkModel> models;
  for (long drop = 0; drop < kScaDrops; ++drop) {
    models.push_back(drop_model(cfg, drop, SchemeKind::CFdbNomaOptimal));
    const double opt = solve_polyblock(models.back(), cfg).objective_bps_hz;
    const double sca = solve_sca(models.back(), cfg, drop).objective_bps_hz;
    optimal[drop] = opt;
    if (sca >= (1.0 - kScaRelGap) * opt) ++close;
    if (sca > opt + cfg.solver_tol) ++above;
  }
  const double secs = seconds_since(t0);
  const bool passed = close >= kScaPassFraction * kScaDrops && above == 0 && secs < kScaSeconds;
  report("C2 sca_near_optimal",
         passed,
         fmt("sca_restarts=%d: %d/%d drops within %.0f%% (need %.0f), %d above optimum + tol, "
             "%.1f s (limit %.0f s)",
             cfg.sca_restarts, close, kScaDrops, 100.0 * kScaRelGap, kScaPassFraction * kScaDrops,
             above, secs, kScaSeconds));
  // Sensitivity to the restart knob, not part of the verdict.
  for (int restarts : {2, 3}) {
    SimConfig alt = cfg;
    alt.sca_restarts = restarts;
    int n = 0;
    for (long drop = 0; drop < kScaDrops; ++drop) {
      if (solve_sca(models[drop], alt, drop).objective_bps_hz >= (1.0 - kScaRelGap) * optimal[drop]) {
        ++n;
      }
    }
    info(fmt("sca_restarts=%d: %d/%d drops within %.0f%%", restarts, n, kScaDrops,
             100.0 * kScaRelGap));
  }
}

struct CliRun {
  int code = 0;
  std::string csv;
  std::string log;
  double seconds = 0.0;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  CliRun r;
  r.code = cli::run(args, out, err);
  r.seconds = seconds_since(t0);
  r.csv = out.str();
  r.log = err.str();
  return r;
}

// (scheme, sweep value) -> mean_tput, from the sweep CSV.
using Table = std::map<std::pair<std::string, double>, double>;

Table parse_csv(const std::string& csv, std::vector<double>& values) {
  Table table;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 7) continue;
    const double v = std::stod(f[2]);
    table[{f[0], v}] = std::stod(f[3]);
    if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
  }
  std::sort(values.begin(), values.end());
  return table;
}

std::vector<double> series(const Table& t, const std::vector<double>& values, SchemeKind s) {
  std::vector<double> out;
  for (double v : values) out.push_back(t.at({std::string(scheme_name(s)), v}));
  return out;
}

long count_after(const std::string& log, const std::string& key) {
  const auto pos = log.rfind(key);
  return pos == std::string::npos ? -1 : std::stol(log.substr(pos + key.size()));
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += (s.empty() ? "" : " ") + fmt("%.4g", x);
  return s;
}

std::string config(const char* name) { return std::string(FDNOMA_CONFIG_DIR) + "/" + name; }

void criteria_fig5a() {
  const CliRun serial = run_cli({"run", config("fig5a.cfg"), "--workers", "1"});
  if (serial.code != cli::kOk) {
    report("C3 scheme_ordering", false, fmt("run fig5a.cfg exited %d: %s", serial.code, serial.log.c_str()));
    report("C5 diminishing_returns", false, "no sweep output");
    report("C7 determinism", false, "no sweep output");
    return;
  }
  std::vector<double> values;
  const Table t = parse_csv(serial.csv, values);
  const auto c = series(t, values, SchemeKind::CFdbNomaOptimal);
  const auto f = series(t, values, SchemeKind::FdbNoma);
  const auto oma = series(t, values, SchemeKind::FdbOma);
  const auto hd = series(t, values, SchemeKind::HdbNoma);
  const auto sub = series(t, values, SchemeKind::CFdbNomaSuboptimal);

  bool above_fd = true;
  for (std::size_t i = 0; i < values.size(); ++i) above_fd = above_fd && c[i] > f[i];
  const auto def = std::find(values.begin(), values.end(), kDefaultSnrDb) - values.begin();
  const bool at_default = static_cast<std::size_t>(def) < values.size() && c[def] > oma[def] &&
                          c[def] > hd[def];
  report("C3 scheme_ordering", above_fd && at_default && serial.seconds <= kSweepSeconds,
         fmt("C-FDB > FDB-NOMA at every point: %s; at %.0f dB C-FDB %.4g vs FDB-OMA %.4g, HDB %.4g; "
             "%.0f s (limit %.0f s); polyblock budget fallbacks: %ld",
             above_fd ? "yes" : "no", kDefaultSnrDb, c[def], oma[def], hd[def], serial.seconds,
             kSweepSeconds, count_after(serial.log, "fallbacks: ")));
  info("C-FDB optimal:    " + join(c));
  info("C-FDB suboptimal: " + join(sub));
  info("FDB-NOMA:         " + join(f));
  info("FDB-OMA:          " + join(oma));
  info("HDB-NOMA:         " + join(hd));

  // Increments of the C-FDB curve, bottom three steps vs top three steps.
  std::vector<double> inc;
  for (std::size_t i = 1; i < c.size(); ++i) inc.push_back(c[i] - c[i - 1]);
  bool diminishing = inc.size() >= 6;
  if (diminishing) {
    const double min_bottom = *std::min_element(inc.begin(), inc.begin() + 3);
    const double max_top = *std::max_element(inc.end() - 3, inc.end());
    diminishing = max_top < min_bottom;
  }
  report("C5 diminishing_returns", diminishing,
         "C-FDB increments per step: " + join(inc) +
             " (every top-3 increment must be below every bottom-3 increment)");

  const CliRun parallel = run_cli(
      {"run", config("fig5a.cfg"), "--workers", std::to_string(kParallelWorkers)});
  report("C7 determinism", parallel.code == cli::kOk && parallel.csv == serial.csv,
         fmt("workers 1 vs %d: CSV %s (%zu bytes)", kParallelWorkers,
             parallel.csv == serial.csv ? "byte-identical" : "differs", serial.csv.size()));
}

void criterion_fig5b() {
  const CliRun r = run_cli({"run", config("fig5b.cfg"), "--workers", "1"});
  if (r.code != cli::kOk) {
    report("C4 si_sensitivity", false, fmt("run fig5b.cfg exited %d: %s", r.code, r.log.c_str()));
    return;
  }
  std::vector<double> values;
  const Table t = parse_csv(r.csv, values);
  const auto hd = series(t, values, SchemeKind::HdbNoma);
  const double hd_spread =
      *std::max_element(hd.begin(), hd.end()) - *std::min_element(hd.begin(), hd.end());
  std::string violations;
  for (SchemeKind s : {SchemeKind::CFdbNomaOptimal, SchemeKind::CFdbNomaSuboptimal,
                       SchemeKind::FdbNoma, SchemeKind::FdbOma}) {
    const auto y = series(t, values, s);
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (y[i] > y[i - 1]) {
        violations += fmt(" %s@%g(+%.3g)", std::string(scheme_name(s)).c_str(), values[i],
                          y[i] - y[i - 1]);
      }
    }
    info(fmt("%-18s ", std::string(scheme_name(s)).c_str()) + join(y));
  }
  info("HdbNoma            " + join(hd));
  const auto oma = series(t, values, SchemeKind::FdbOma);
  double crossover = std::nan("");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (hd[i] >= oma[i]) {
      crossover = values[i];
      break;
    }
  }
  const bool passed = hd_spread <= kHdConstancyTol && violations.empty() && !std::isnan(crossover);
  report("C4 si_sensitivity", passed,
         fmt("HDB spread %.3g (tol %.0e); FD monotonicity violations:%s; first kappa_SI with "
             "HDB >= FDB-OMA: %g dB; polyblock budget fallbacks: %ld",
             hd_spread, kHdConstancyTol, violations.empty() ? " none" : violations.c_str(), crossover,
             count_after(r.log, "fallbacks: ")));
}

void criterion_identities() {
  // kappa_DU = 1 identity.
  SimConfig cfg = shaped(2, 2, 2);
  cfg.kappa_du_db = 0.0;
  double worst_identity = 0.0;
  for (long drop = 0; drop < kIdentityDrops; ++drop) {
    const double a = solve_polyblock(drop_model(cfg, drop, SchemeKind::CFdbNomaOptimal), cfg).objective_bps_hz;
    const double b = solve_polyblock(drop_model(cfg, drop, SchemeKind::FdbNoma), cfg).objective_bps_hz;
    worst_identity = std::max(worst_identity, std::abs(a - b));
  }

  // Surrogate probes on the full reference scenario, in coordinates x = p / cap.
  const SimConfig ref = shaped(2, 4, 4);
  RandomStream rng(ref.base_seed, 0, StreamTag::Test);
  auto random_point = [&](const LinkModel& m) {
    Eigen::VectorXd p(m.n_users());
    for (int j = 0; j < m.n_users(); ++j) p[j] = m.limits.upper[j] * rng.uniform();
    for (const auto& g : m.limits.groups) {
      double total = 0.0;
      for (int j : g.members) total += p[j];
      if (total > g.cap) {
        for (int j : g.members) p[j] *= g.cap / total;
      }
    }
    return p;
  };
  double worst_tangent = 0.0;
  double worst_minorant = -1e300;
  double worst_gradient = 0.0;
  int probes = 0;
  for (int k = 0; k < kSurrogateRefs; ++k) {
    const LinkModel m = drop_model(ref, k, SchemeKind::CFdbNomaSuboptimal);
    const Eigen::VectorXd pt = random_point(m);
    const DcSurrogate s = build_surrogate(pt, m);
    worst_tangent = std::max(worst_tangent, std::abs(s.value(pt) - objective_value(m, pt)));
    for (int i = 0; i < kProbesPerRef; ++i) {
      const Eigen::VectorXd p = random_point(m);
      worst_minorant = std::max(worst_minorant, s.value(p) - objective_value(m, p));
      ++probes;
    }
    const Eigen::VectorXd g = s.gradient(pt);
    for (int j = 0; j < m.n_users(); ++j) {
      const double h = kFdRelStep * m.limits.upper[j];
      Eigen::VectorXd hi = pt, lo = pt;
      hi[j] += h;
      lo[j] -= h;
      const double fd = (s.value(hi) - s.value(lo)) / (2.0 * h);
      worst_gradient =
          std::max(worst_gradient, std::abs(g[j] - fd) * m.limits.upper[j]);
    }
  }
  const bool passed = worst_identity <= kIdentityTol && worst_tangent <= kTangencyTol &&
                      worst_minorant <= kMinorantSlack && worst_gradient <= kGradientTol &&
                      probes >= 1000;
  report("C6 structural_identities", passed,
         fmt("kappa_DU=1 max diff %.3g over %d drops (tol %.0e); tangency %.3g (tol %.0e); "
             "max surrogate - objective over %d probes %.3g; gradient vs central FD %.3g (tol %.0e)",
             worst_identity, kIdentityDrops, kIdentityTol, worst_tangent, kTangencyTol, probes,
             worst_minorant, worst_gradient, kGradientTol));
}

}  // namespace

int main() {
  criterion_oracle();
  criterion_sca();
  criteria_fig5a();
  criterion_fig5b();
  criterion_identities();
  std::sort(g_lines.begin(), g_lines.end(), [](const Line& a, const Line& b) { return a.id < b.id; });
  int failed = 0;
  std::printf("\nsummary\n");
  for (const auto& l : g_lines) {
    std::printf("%s  %s\n", l.passed ? "PASS" : "FAIL", l.id.c_str());
    failed += l.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(g_lines.size()) - failed, g_lines.size());
  return failed == 0 ? 0 : 1;
}
