#include <sstream>

#include <gtest/gtest.h>

#include "fdnoma/config.hpp"
#include "fdnoma/power_allocation.hpp"
#include "fdnoma/scheme.hpp"
#include "fdnoma/solver_result.hpp"
#include "fdnoma/units.hpp"

namespace fdnoma {
namespace {

TEST(Units, DbmAndDbConversions) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_DOUBLE_EQ(dbm_to_watts(0.0), 1e-3);
  EXPECT_NEAR(watts_to_dbm(0.5), 26.989700043360187, 1e-12);
  EXPECT_DOUBLE_EQ(db_to_linear(-110.0), 1e-11);
  EXPECT_DOUBLE_EQ(linear_to_db(1e-9), -90.0);
  for (double x : {-130.0, -3.0, 0.0, 17.5, 90.0}) {
    EXPECT_NEAR(linear_to_db(db_to_linear(x)), x, 1e-12);
    EXPECT_NEAR(watts_to_dbm(dbm_to_watts(x)), x, 1e-12);
  }
}

TEST(Scheme, NamesRoundTrip) {
  for (SchemeKind s : kAllSchemes) {
    auto parsed = parse_scheme(scheme_name(s));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, s);
  }
  EXPECT_FALSE(parse_scheme("NotAScheme").has_value());
}

TEST(Scheme, Traits) {
  EXPECT_EQ(scheme_traits(SchemeKind::CFdbNomaOptimal).du_cancellation, DuCancellation::Residual);
  EXPECT_EQ(scheme_traits(SchemeKind::CFdbNomaSuboptimal).duplex, DuplexMode::Full);
  EXPECT_EQ(scheme_traits(SchemeKind::FdbNoma).du_cancellation, DuCancellation::None);
  EXPECT_EQ(scheme_traits(SchemeKind::FdbOma).access, AccessMode::Oma);
  EXPECT_EQ(scheme_traits(SchemeKind::HdbNoma).duplex, DuplexMode::Half);
}

TEST(SimConfig, ReferenceScenarioDefaults) {
  const SimConfig cfg;
  EXPECT_EQ(cfg.area_radius_m, 300.0);
  EXPECT_EQ(cfg.pathloss_exponent, 3.5);
  EXPECT_EQ(cfg.si_channel_gain_db, 0.0);
  EXPECT_EQ(cfg.kappa_si_db, -110.0);
  EXPECT_EQ(cfg.kappa_du_db, -110.0);
  EXPECT_EQ(cfg.p_dl_max_dbm, 30.0);
  EXPECT_EQ(cfg.p_ul_max_dbm, 27.0);
  EXPECT_EQ(cfg.solver_tol, 1e-3);
  EXPECT_EQ(cfg.n_cells, 2);
  EXPECT_EQ(cfg.n_dl_users, 4);
  EXPECT_EQ(cfg.n_ul_users, 4);
  EXPECT_EQ(cfg.min_distance_m, 1.0);
  EXPECT_FALSE(cfg.strict_decodability);
  EXPECT_EQ(cfg.polyblock_vertex_budget, 200000);
  EXPECT_EQ(cfg.sca_restarts, 1);
  EXPECT_TRUE(validate_config(cfg).empty());
}

TEST(SimConfig, DerivedQuantities) {
  SimConfig cfg;
  cfg.snr_ratio_db = 90.0;
  EXPECT_DOUBLE_EQ(cfg.p_dl_max_w(), 1.0);
  EXPECT_NEAR(cfg.p_ul_max_w(), 0.501187233627272, 1e-12);
  EXPECT_NEAR(cfg.noise_w(), 1e-9, 1e-24);
  EXPECT_NEAR(cfg.kappa_si(), 1e-11, 1e-26);
  EXPECT_NEAR(cfg.kappa_du(), 1e-11, 1e-26);
  EXPECT_DOUBLE_EQ(cfg.si_gain(), 1.0);
  cfg.snr_ratio_db = 60.0;
  cfg.p_dl_max_dbm = 40.0;
  EXPECT_NEAR(cfg.noise_w(), 1e-5, 1e-18);
}

TEST(SimConfig, ValidationReportsEveryProblem) {
  SimConfig cfg;
  cfg.n_dl_users = 3;
  cfg.solver_tol = 0.0;
  cfg.r_min_bps_hz = -1.0;
  const auto issues = validate_config(cfg);
  ASSERT_EQ(issues.size(), 3u);
  EXPECT_EQ(issues[0].message, "n_dl_users not divisible by n_cells");
  EXPECT_EQ(issues[1].field, "r_min_bps_hz");
  EXPECT_EQ(issues[2].message, "tolerance must be positive");
}

TEST(SimConfig, ApplySetting) {
  SimConfig cfg;
  std::string error;
  EXPECT_EQ(apply_setting(cfg, "snr_ratio_db", "75.5"), SettingStatus::Applied);
  EXPECT_EQ(cfg.snr_ratio_db, 75.5);
  EXPECT_EQ(apply_setting(cfg, "scheme", "HdbNoma"), SettingStatus::Applied);
  EXPECT_EQ(cfg.scheme, SchemeKind::HdbNoma);
  EXPECT_EQ(apply_setting(cfg, "base_seed", "18446744073709551615"), SettingStatus::Applied);
  EXPECT_EQ(cfg.base_seed, 18446744073709551615ULL);
  EXPECT_EQ(apply_setting(cfg, "strict_decodability", "true"), SettingStatus::Applied);
  EXPECT_TRUE(cfg.strict_decodability);
  EXPECT_EQ(apply_setting(cfg, "sca_init", "minimum_power"), SettingStatus::Applied);
  EXPECT_EQ(cfg.sca_init, ScaInit::MinimumPower);
  EXPECT_EQ(apply_setting(cfg, "n_cells", "two", &error), SettingStatus::BadValue);
  EXPECT_NE(error.find("n_cells"), std::string::npos);
  EXPECT_EQ(apply_setting(cfg, "n_cells", "2.5"), SettingStatus::BadValue);
  EXPECT_EQ(apply_setting(cfg, "no_such_key", "1"), SettingStatus::UnknownKey);
}

TEST(SimConfig, KeyValueReader) {
  std::istringstream in("# comment\n\n n_drops = 7  # trailing\nbroken line\nkappa_si_db=-90\n");
  std::vector<ConfigIssue> issues;
  const auto kv = read_key_values(in, issues);
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].key, "n_drops");
  EXPECT_EQ(kv[0].value, "7");
  EXPECT_EQ(kv[0].line, 3);
  EXPECT_EQ(kv[1].key, "kappa_si_db");
  EXPECT_EQ(kv[1].value, "-90");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].field, "line 4");

  KeyValue one;
  EXPECT_TRUE(split_assignment("a=b=c", one));
  EXPECT_EQ(one.key, "a");
  EXPECT_EQ(one.value, "b=c");
  EXPECT_FALSE(split_assignment("novalue", one));
  EXPECT_FALSE(split_assignment("=3", one));
}

TEST(SimConfig, FormatRoundTrips) {
  SimConfig cfg;
  cfg.kappa_si_db = -87.25;
  cfg.n_drops = 9;
  cfg.scheme = SchemeKind::FdbOma;
  std::istringstream in(format_config(cfg));
  std::vector<ConfigIssue> issues;
  SimConfig back;
  for (const auto& kv : read_key_values(in, issues)) {
    EXPECT_EQ(apply_setting(back, kv.key, kv.value), SettingStatus::Applied) << kv.key;
  }
  EXPECT_TRUE(issues.empty());
  EXPECT_EQ(back.kappa_si_db, -87.25);
  EXPECT_EQ(back.n_drops, 9);
  EXPECT_EQ(back.scheme, SchemeKind::FdbOma);
}

TEST(PowerAllocation, FlatLayout) {
  PowerAllocation p{{0.1, 0.2}, {0.3}};
  const Eigen::VectorXd flat = p.flat();
  ASSERT_EQ(flat.size(), 3);
  EXPECT_EQ(flat[2], 0.3);
  const PowerAllocation back = PowerAllocation::from_flat(flat, 2);
  EXPECT_EQ(back.dl_w, p.dl_w);
  EXPECT_EQ(back.ul_w, p.ul_w);
  EXPECT_EQ(PowerAllocation::zeros(2, 3).size(), 5);
}

TEST(PowerLimits, GenericSetHasPerCellSumCaps) {
  SimConfig cfg;
  const PowerLimits limits = generic_power_limits({0, 1, 0}, 2, 2, cfg);
  ASSERT_EQ(limits.upper.size(), 5);
  ASSERT_EQ(limits.groups.size(), 2u);
  EXPECT_EQ(limits.groups[0].members, (std::vector<int>{0, 2}));
  EXPECT_DOUBLE_EQ(limits.groups[0].cap, 1.0);

  Eigen::VectorXd p(5);
  p << 0.6, 1.0, 0.4, 0.5, 0.0;
  EXPECT_TRUE(limits.contains(p));
  p[2] = 0.41;
  EXPECT_FALSE(limits.contains(p));
  EXPECT_EQ(limits.violations(p).size(), 1u);
  p[2] = -0.1;
  EXPECT_FALSE(limits.contains(p));
  p[2] = 0.0;
  p[3] = 0.6;
  EXPECT_FALSE(limits.contains(p));
}

TEST(SolverStatus, Names) {
  EXPECT_EQ(status_name(SolverStatus::Converged), "converged");
  EXPECT_EQ(status_name(SolverStatus::BudgetExhausted), "budget_exhausted");
  EXPECT_EQ(status_name(SolverStatus::Infeasible), "infeasible");
}

}  // namespace
}  // namespace fdnoma
