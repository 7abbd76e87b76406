#include "fdnoma/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "fdnoma/grid_search.hpp"
#include "fdnoma/polyblock.hpp"
#include "fdnoma/power_control.hpp"
#include "fdnoma/rng.hpp"
#include "fdnoma/sca.hpp"
#include "fdnoma/schemes.hpp"
#include "fdnoma/sinr.hpp"
#include "fdnoma/surrogate.hpp"
#include "fdnoma/topology.hpp"

namespace fdnoma {

namespace {

struct Drop {
  ChannelSet ch;
  SicOrder order;
};

Drop make_drop(const SimConfig& cfg, long index, bool corrupt) {
  const Topology topo = generate_drop(cfg, index);
  Drop d{build_channels(topo, cfg, index), {}};
  d.order = sic_order(d.ch, topo);
  if (corrupt) d.ch.rrh_dl(0, 0) = -d.ch.rrh_dl(0, 0);
  return d;
}

SimConfig shape(SimConfig cfg, int cells, int dl, int ul) {
  cfg.n_cells = cells;
  cfg.n_dl_users = dl;
  cfg.n_ul_users = ul;
  cfg.r_min_bps_hz = 0.0;
  return cfg;
}

Eigen::VectorXd random_power(const LinkModel& model, RandomStream& rng) {
  Eigen::VectorXd p(model.n_users());
  for (int j = 0; j < model.n_users(); ++j) p[j] = model.limits.upper[j] * rng.uniform();
  for (const auto& g : model.limits.groups) {
    double total = 0.0;
    for (int j : g.members) total += p[j];
    if (total > g.cap) {
      for (int j : g.members) p[j] *= g.cap / total;
    }
  }
  return p;
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

constexpr int kDrops = 4;

VerifyCheck check_oracle_closed_form(const VerifyOptions& o) {
  const SimConfig cfg = shape(o.base, 1, 1, 0);
  Drop d = make_drop(cfg, 0, false);
  const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
  Eigen::VectorXd gamma(1);
  gamma[0] = 0.5 * m.limits.upper[0] * m.signal_gain[0] / m.noise_w;
  const FeasibilityResult r = sinr_targets_feasible(m, gamma);
  const double expect = gamma[0] * m.noise_w / m.signal_gain[0];
  const double err = r.feasible() ? std::abs(r.p[0] - expect) / expect : 1.0;
  return {"oracle_isolated_link_closed_form", r.feasible() && err <= 1e-12,
          fmt("rel err %.3g", err)};
}

VerifyCheck check_polyblock_vs_grid(const VerifyOptions& o) {
  const SimConfig cfg = shape(o.base, 1, 1, 1);
  constexpr int kLevels = 64;
  double worst = 0.0;
  bool ok = true;
  for (long i = 0; i < kDrops; ++i) {
    Drop d = make_drop(cfg, i, false);
    const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
    const SolverResult poly = solve_polyblock(m, cfg);
    const SolverResult grid = grid_search(m, cfg.r_min_bps_hz, kLevels);
    const double step =
        poly.objective_bps_hz - objective_value(m, snap_down_to_grid(m, poly.p.flat(), kLevels));
    const double excess = grid.objective_bps_hz - poly.objective_bps_hz;
    const double shortfall = poly.objective_bps_hz - grid.objective_bps_hz;
    worst = std::max(worst, excess);
    ok = ok && poly.feasible && excess <= cfg.solver_tol &&
         shortfall <= cfg.solver_tol + step + 1e-12;
  }
  return {"polyblock_matches_grid_oracle", ok, fmt("max grid excess %.3g", worst)};
}

VerifyCheck check_kappa_du_equivalence(const VerifyOptions& o) {
  SimConfig cfg = shape(o.base, 2, 2, 2);
  cfg.kappa_du_db = 0.0;
  double worst = 0.0;
  for (long i = 0; i < kDrops; ++i) {
    Drop d = make_drop(cfg, i, false);
    const double a = evaluate_scheme(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg).objective_bps_hz;
    const double b = evaluate_scheme(d.ch, d.order, SchemeKind::FdbNoma, cfg).objective_bps_hz;
    worst = std::max(worst, std::abs(a - b));
  }
  return {"kappa_du_one_reduces_to_fdb_noma", worst <= 1e-9, fmt("max diff %.3g", worst)};
}

VerifyCheck check_surrogate(const VerifyOptions& o) {
  const SimConfig cfg = shape(o.base, 2, 2, 2);
  RandomStream rng(o.base.base_seed, 0, StreamTag::Test, 1);
  double tangency = 0.0;
  double minorant = -1e300;
  double grad = 0.0;
  for (long i = 0; i < kDrops; ++i) {
    Drop d = make_drop(cfg, i, o.corrupt_gain_sign);
    const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
    for (int k = 0; k < 25; ++k) {
      const Eigen::VectorXd pt = random_power(m, rng);
      const DcSurrogate s = build_surrogate(pt, m);
      tangency = std::max(tangency, std::abs(s.value(pt) - objective_value(m, pt)));
      const Eigen::VectorXd q = random_power(m, rng);
      minorant = std::max(minorant, s.value(q) - objective_value(m, q));
      const Eigen::VectorXd g = s.gradient(q);
      for (int j = 0; j < m.n_users(); ++j) {
        const double h = 1e-6 * m.limits.upper[j];
        Eigen::VectorXd hi = q, lo = q;
        hi[j] += h;
        lo[j] -= h;
        const double fd = (s.value(hi) - s.value(lo)) / (2.0 * h);
        // Gradient compared per unit of the variable's cap.
        grad = std::max(grad, std::abs(fd - g[j]) * m.limits.upper[j]);
      }
    }
  }
  const bool ok = tangency <= 1e-10 && minorant <= 1e-12 && grad <= 1e-5;
  char buf[160];
  std::snprintf(buf, sizeof buf, "tangency %.3g, minorant excess %.3g, grad err %.3g", tangency,
                minorant, grad);
  return {"surrogate_tangent_minorant_gradient", ok, buf};
}

VerifyCheck check_cran_dominance(const VerifyOptions& o) {
  SimConfig cfg = o.base;
  cfg.kappa_du_db = -110.0;
  RandomStream rng(o.base.base_seed, 0, StreamTag::Test, 2);
  double worst = 1e300;
  for (long i = 0; i < kDrops; ++i) {
    Drop d = make_drop(cfg, i, o.corrupt_gain_sign);
    const LinkModel c = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
    const LinkModel f = build_link_model(d.ch, d.order, SchemeKind::FdbNoma, cfg);
    for (int k = 0; k < 50; ++k) {
      const Eigen::VectorXd p = random_power(c, rng);
      worst = std::min(worst, objective_value(c, p) - objective_value(f, p));
    }
  }
  return {"cran_pointwise_dominance", worst >= -1e-12, fmt("min margin %.3g", worst)};
}

VerifyCheck check_physical_invariants(const VerifyOptions& o) {
  const SimConfig& cfg = o.base;
  RandomStream rng(o.base.base_seed, 0, StreamTag::Test, 3);
  bool ok = true;
  std::string detail = "gains positive, SINR and rates non-negative";
  for (long i = 0; i < kDrops && ok; ++i) {
    Drop d = make_drop(cfg, i, o.corrupt_gain_sign);
    if (!d.ch.gains_positive()) {
      ok = false;
      detail = "non-positive channel gain on drop " + std::to_string(i);
      break;
    }
    for (SchemeKind s : kAllSchemes) {
      const LinkModel m = build_link_model(d.ch, d.order, s, cfg);
      const Eigen::VectorXd p = random_power(m, rng);
      const Eigen::VectorXd sinr = sinr_vector(m, p);
      if (!(sinr.array() >= 0.0).all() || !std::isfinite(objective_value(m, p))) {
        ok = false;
        detail = "negative SINR under " + std::string(scheme_name(s));
        break;
      }
    }
  }
  return {"channel_and_sinr_invariants", ok, detail};
}

VerifyCheck check_hd_kappa_si(const VerifyOptions& o) {
  SimConfig lo = shape(o.base, 2, 2, 2);
  SimConfig hi = lo;
  lo.kappa_si_db = -130.0;
  hi.kappa_si_db = -60.0;
  double worst = 0.0;
  for (long i = 0; i < kDrops; ++i) {
    Drop d = make_drop(lo, i, false);
    const double a = evaluate_scheme(d.ch, d.order, SchemeKind::HdbNoma, lo).objective_bps_hz;
    const double b = evaluate_scheme(d.ch, d.order, SchemeKind::HdbNoma, hi).objective_bps_hz;
    worst = std::max(worst, std::abs(a - b));
  }
  return {"hd_noma_independent_of_kappa_si", worst <= 1e-9, fmt("max diff %.3g", worst)};
}

VerifyCheck check_sca_vs_polyblock(const VerifyOptions& o) {
  const SimConfig cfg = shape(o.base, 1, 2, 1);
  double worst = -1e300;
  for (long i = 0; i < kDrops; ++i) {
    Drop d = make_drop(cfg, i, false);
    const LinkModel m = build_link_model(d.ch, d.order, SchemeKind::CFdbNomaOptimal, cfg);
    const double poly = solve_polyblock(m, cfg).objective_bps_hz;
    const double sca = solve_sca(m, cfg, i).objective_bps_hz;
    worst = std::max(worst, sca - poly);
  }
  return {"sca_never_above_polyblock", worst <= o.base.solver_tol,
          fmt("max excess %.3g", worst)};
}

}  // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& options) {
  const std::vector<std::function<VerifyCheck(const VerifyOptions&)>> checks = {
      check_oracle_closed_form, check_polyblock_vs_grid, check_kappa_du_equivalence,
      check_surrogate,          check_cran_dominance,    check_physical_invariants,
      check_hd_kappa_si,        check_sca_vs_polyblock,
  };
  std::vector<VerifyCheck> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check(options));
    } catch (const std::exception& e) {
      out.push_back({"check raised", false, e.what()});
    }
  }
  return out;
}

void write_verify_table(std::ostream& out, const std::vector<VerifyCheck>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ')
        << c.detail << '\n';
  }
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

}  // namespace fdnoma
