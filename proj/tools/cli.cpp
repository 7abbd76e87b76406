#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "fdnoma/experiment.hpp"
#include "fdnoma/polyblock.hpp"
#include "fdnoma/sca.hpp"
#include "fdnoma/schemes.hpp"
#include "fdnoma/sinr.hpp"
#include "fdnoma/verify.hpp"

namespace fdnoma::cli {

namespace {

constexpr const char* kLogEnv = "FDNOMA_LOG_LEVEL";

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, /*force_flush=*/true);
  auto log = std::make_shared<spdlog::logger>("fdnoma", sink);
  log->set_pattern("fdnoma: %v");
  log->set_level(spdlog::level::info);
  if (const char* level = std::getenv(kLogEnv)) log->set_level(spdlog::level::from_str(level));
  return log;
}

struct LoadedConfig {
  ExperimentConfig exp;
  bool ok = false;
};

/// Reads the optional config file, then applies `--set` overrides and
/// validates. Every problem is logged; ok=false means exit 2.
LoadedConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                         spdlog::logger& log) {
  LoadedConfig loaded;
  std::vector<ConfigIssue> issues;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      log.error("cannot read config file '{}'", path);
      return loaded;
    }
    loaded.exp = read_experiment_config(in, issues);
    for (const auto& issue : issues) log.error("{}: {}: {}", path, issue.field, issue.message);
  }
  for (const auto& text : overrides) {
    KeyValue kv;
    if (!split_assignment(text, kv)) {
      issues.push_back({text, "expected key=value"});
      log.error("--set '{}': expected key=value", text);
      continue;
    }
    std::string error;
    const SettingStatus status = apply_experiment_setting(loaded.exp, kv.key, kv.value, &error);
    if (status == SettingStatus::UnknownKey) {
      issues.push_back({kv.key, "unknown key"});
      log.error("--set {}: unknown key", kv.key);
    } else if (status == SettingStatus::BadValue) {
      issues.push_back({kv.key, error});
      log.error("--set {}: {}", kv.key, error);
    }
  }
  if (!issues.empty()) return loaded;

  auto invalid = validate_config(loaded.exp.sim);
  auto sweep_invalid = validate_sweep(loaded.exp.sweep);
  invalid.insert(invalid.end(), sweep_invalid.begin(), sweep_invalid.end());
  for (const auto& issue : invalid) log.error("invalid {}: {}", issue.field, issue.message);
  loaded.ok = invalid.empty();
  return loaded;
}

/// Opens `path` for writing, or returns nullptr after logging.
std::unique_ptr<std::ofstream> open_output(const std::string& path, spdlog::logger& log) {
  auto file = std::make_unique<std::ofstream>(path);
  if (!*file) {
    log.error("cannot write '{}'", path);
    return nullptr;
  }
  return file;
}

int default_workers() {
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

int cmd_run(const std::string& config, const std::vector<std::string>& overrides,
            const std::string& out_path, int workers, std::ostream& out, spdlog::logger& log) {
  LoadedConfig loaded = load_config(config, overrides, log);
  if (!loaded.ok) return kConfigInvalid;
  const ExperimentConfig& exp = loaded.exp;

  const long total = static_cast<long>(exp.sweep.values.size()) * exp.sweep.n_drops;
  log.info("{} sweep: {} values x {} drops x {} schemes on {} workers",
           sweep_variable_name(exp.sweep.variable), exp.sweep.values.size(), exp.sweep.n_drops,
           exp.sweep.schemes.size(), workers);
  const long report_every = std::max(1L, total / 20);
  const SweepResult result =
      run_sweep(exp.sweep, exp.sim, workers, [&](long done, long all) {
        if (done % report_every == 0 || done == all) log.debug("{}/{} drops", done, all);
      });

  if (out_path.empty()) {
    write_sweep_csv(out, result);
  } else {
    auto file = open_output(out_path, log);
    if (!file) return kFailure;
    write_sweep_csv(*file, result);
  }

  for (const auto& pt : result.points) {
    if (pt.n_fallback > 0) {
      log.info("{} at {:g} dB: polyblock budget hit on {}/{} drops, SCA fallback used",
               scheme_name(pt.scheme), pt.value_db, pt.n_fallback, pt.n_drops);
    }
    if (pt.n_feasible < pt.n_drops) {
      log.info("{} at {:g} dB: {}/{} drops infeasible", scheme_name(pt.scheme), pt.value_db,
               pt.n_drops - pt.n_feasible, pt.n_drops);
    }
  }
  log.info("fallbacks: {}", result.total_fallbacks());
  if (result.infeasible_everywhere()) {
    log.error("no feasible drop at any sweep point");
    return kInfeasibleEverywhere;
  }
  if (result.total_budget_exhausted() > 0) {
    log.error("polyblock budget exhausted on {} solves without fallback",
              result.total_budget_exhausted());
    return kBudgetExhausted;
  }
  return kOk;
}

int cmd_verify(const std::vector<std::string>& overrides, bool corrupt, std::ostream& out,
               spdlog::logger& log) {
  LoadedConfig loaded = load_config("", overrides, log);
  if (!loaded.ok) return kConfigInvalid;
  VerifyOptions options;
  options.base = loaded.exp.sim;
  options.corrupt_gain_sign = corrupt;
  const auto checks = run_verify(options);
  write_verify_table(out, checks);
  const bool ok = all_passed(checks);
  if (!ok) log.error("verification failed");
  return ok ? kOk : kFailure;
}

struct DumpOptions {
  std::string config;
  std::vector<std::string> overrides;
  long drop = 0;
  std::string out_path;
  std::string scheme = "CFdbNomaOptimal";
  std::string breakdown_path;
  std::string trace_path;
};

int cmd_dump_drop(const DumpOptions& o, std::ostream& out, spdlog::logger& log) {
  LoadedConfig loaded = load_config(o.config, o.overrides, log);
  if (!loaded.ok) return kConfigInvalid;
  const auto scheme = parse_scheme(o.scheme);
  if (!scheme) {
    log.error("unknown scheme '{}'", o.scheme);
    return kConfigInvalid;
  }
  if (o.drop < 0) {
    log.error("drop index must be non-negative");
    return kConfigInvalid;
  }
  const SimConfig& cfg = loaded.exp.sim;
  const Topology topo = generate_drop(cfg, o.drop);
  if (o.out_path.empty()) {
    write_drop(out, topo);
  } else {
    auto file = open_output(o.out_path, log);
    if (!file) return kFailure;
    write_drop(*file, topo);
  }
  if (o.breakdown_path.empty() && o.trace_path.empty()) return kOk;

  const ChannelSet ch = build_channels(topo, cfg, o.drop);
  const SicOrder order = sic_order(ch, topo);
  const LinkModel model = build_link_model(ch, order, *scheme, cfg);
  const SolverResult result = evaluate_scheme(model, cfg, o.drop);
  log.info("{} on drop {}: {} bits/s/Hz, status {}, {} iterations", scheme_name(*scheme), o.drop,
           result.objective_bps_hz, status_name(result.status), result.iterations);
  if (!result.feasible) {
    log.error("no feasible allocation on this drop");
    return kInfeasibleEverywhere;
  }
  if (!o.breakdown_path.empty()) {
    auto file = open_output(o.breakdown_path, log);
    if (!file) return kFailure;
    write_breakdown_csv(*file, model, sinr_breakdown(result.p, model));
  }
  if (!o.trace_path.empty()) {
    auto file = open_output(o.trace_path, log);
    if (!file) return kFailure;
    if (*scheme == SchemeKind::CFdbNomaSuboptimal) {
      write_sca_trace_csv(*file, result);
    } else {
      write_polyblock_trace_csv(*file, result);
    }
  }
  return result.status == SolverStatus::BudgetExhausted ? kBudgetExhausted : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger(err);

  CLI::App app{"Multi-cell full-duplex NOMA power allocation simulator"};
  app.require_subcommand(1);

  std::string run_config;
  std::vector<std::string> run_sets;
  std::string run_out;
  int workers = default_workers();
  auto* run_cmd = app.add_subcommand("run", "Run a throughput sweep and write its CSV");
  run_cmd->add_option("config", run_config, "Config file (key = value lines)");
  run_cmd->add_option("--set", run_sets, "Override one setting, key=value")->take_all();
  run_cmd->add_option("--out", run_out, "Write the CSV here instead of stdout");
  run_cmd->add_option("--workers", workers, "Drop-level worker threads")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> verify_sets;
  bool corrupt = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the fast self-check suite");
  verify_cmd->add_option("--set", verify_sets, "Override one setting, key=value")->take_all();
  verify_cmd->add_flag("--corrupt-gain-sign", corrupt, "Negative control: flip one channel gain")
      ->group("");

  DumpOptions dump;
  auto* dump_cmd = app.add_subcommand("dump-drop", "Write one drop's node positions");
  dump_cmd->add_option("config", dump.config, "Config file (key = value lines)");
  dump_cmd->add_option("--set", dump.overrides, "Override one setting, key=value")->take_all();
  dump_cmd->add_option("--drop", dump.drop, "Drop index");
  dump_cmd->add_option("--out", dump.out_path, "Write the node list here instead of stdout");
  dump_cmd->add_option("--scheme", dump.scheme, "Scheme for --breakdown/--trace");
  dump_cmd->add_option("--breakdown", dump.breakdown_path,
                       "Optimize the scheme and write per-user interference CSV");
  dump_cmd->add_option("--trace", dump.trace_path, "Optimize the scheme and write its trace CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigInvalid;
  }

  try {
    if (*run_cmd) return cmd_run(run_config, run_sets, run_out, workers, out, *log);
    if (*verify_cmd) return cmd_verify(verify_sets, corrupt, out, *log);
    if (*dump_cmd) return cmd_dump_drop(dump, out, *log);
  } catch (const std::exception& e) {
    log->error("{}", e.what());
    return kFailure;
  }
  return kFailure;
}

}  // namespace fdnoma::cli
