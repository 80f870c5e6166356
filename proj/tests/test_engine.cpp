#include "adpasmc/engine.hpp"
#include "adpasmc/output.hpp"

#include <gtest/gtest.h>

#include <limits>

#include <cmath>
#include <sstream>

using namespace adpasmc;

namespace {

ScenarioConfig short_run(double duration) {
  ScenarioConfig cfg;
  cfg.duration = duration;
  return cfg;
}

ScenarioConfig equilibrium() {
  ScenarioConfig cfg;
  cfg.duration = 2.0;
  cfg.uav.drag_coeff = 0.0;
  cfg.initial.euler_deg = Vec3::Zero();
  cfg.initial.rates_deg_s = Vec3::Zero();
  cfg.initial.airspeed = 15.0;
  for (auto& s : cfg.reference.theta_deg) s = Signal::zero();
  cfg.reference.airspeed = Signal::constant(15.0);
  cfg.disturbance = DisturbanceProfile::none();
  cfg.adp.weight_init_max = 0.0;
  return cfg;
}

std::vector<StepRecord> collect(const ScenarioConfig& cfg, RunSummary* summary = nullptr) {
  std::vector<StepRecord> out;
  const RunSummary s = run_scenario(cfg, [&](const StepRecord& r) { out.push_back(r); });
  if (summary) *summary = s;
  return out;
}

std::string csv_text(const ScenarioConfig& cfg) {
  std::ostringstream os;
  write_csv_header(os, StepRecord::columns());
  run_scenario(cfg, [&](const StepRecord& r) { write_csv_row(os, r.row()); });
  return os.str();
}

// Step counter that applies a constant thrust and counts calls.
class ConstantThrust final : public AirspeedLaw {
 public:
  explicit ConstantThrust(double thrust) : thrust_(thrust) {}
  std::string name() const override { return "constant"; }
  double thrust(const AirspeedContext&) const override { return thrust_; }
  double robust_thrust(const AirspeedContext&) const override { return thrust_; }
  double surface(const AirspeedContext& ctx) const override { return ctx.e_v; }
  void advance(const AirspeedContext&, double) override { ++advances; }
  long advances = 0;

 private:
  double thrust_;
};

}  // namespace

TEST(Metrics, ConstantErrorOverTwoSeconds) {
  MetricAccumulator m;
  for (int k = 0; k <= 2000; ++k) m.add(k * 1e-3, Vec3(1, 1, 1), Vec3(-1, 2, 0), -0.5, 3.0);
  EXPECT_NEAR(m.iae(), 6.0, 1e-12);
  EXPECT_NEAR(m.iacm(), 6.0, 1e-12);
  EXPECT_NEAR(m.iae_v(), 1.0, 1e-12);
  EXPECT_NEAR(m.int_thrust(), 6.0, 1e-12);
}

TEST(Metrics, MatchTrapezoidPostProcessing) {
  const auto rec = collect(short_run(5.0));
  double iae = 0, iacm = 0, iaev = 0, ith = 0;
  for (std::size_t i = 1; i < rec.size(); ++i) {
    const double h = rec[i].t - rec[i - 1].t;
    iae += 0.5 * h * (rec[i].e_theta.cwiseAbs().sum() + rec[i - 1].e_theta.cwiseAbs().sum());
    iacm += 0.5 * h * (rec[i].moment.cwiseAbs().sum() + rec[i - 1].moment.cwiseAbs().sum());
    iaev += 0.5 * h * (std::abs(rec[i].e_v) + std::abs(rec[i - 1].e_v));
    ith += 0.5 * h * (rec[i].thrust + rec[i - 1].thrust);
  }
  EXPECT_NEAR(rec.back().iae, iae, 1e-9);
  EXPECT_NEAR(rec.back().iacm, iacm, 1e-9);
  EXPECT_NEAR(rec.back().iae_v, iaev, 1e-9);
  EXPECT_NEAR(rec.back().int_thrust, ith, 1e-9);
}

TEST(Engine, StepCount) {
  EXPECT_EQ(ScenarioConfig{}.step_count(), 120000);
  RunSummary s;
  const auto rec = collect(short_run(0.5), &s);
  EXPECT_EQ(rec.size(), 500u);
  EXPECT_EQ(s.steps, 500);
  for (std::size_t i = 1; i < rec.size(); ++i) ASSERT_GT(rec[i].t, rec[i - 1].t);
}

TEST(Engine, ZeroDuration) {
  RunSummary s;
  const auto rec = collect(short_run(0.0), &s);
  EXPECT_TRUE(rec.empty());
  EXPECT_EQ(s.status, "ok");
  EXPECT_EQ(s.iae, 0.0);
  EXPECT_EQ(s.iacm, 0.0);
  EXPECT_EQ(s.iae_v, 0.0);
  EXPECT_EQ(s.int_thrust, 0.0);
}

TEST(Engine, EquilibriumStaysPut) {
  const auto rec = collect(equilibrium());
  ASSERT_EQ(rec.size(), 2000u);
  for (const auto& r : rec) {
    ASSERT_LT(r.moment.norm(), 1e-9);
    ASSERT_LT(std::abs(r.thrust), 1e-9);
    ASSERT_LT(r.e_theta.norm(), 1e-9);
    ASSERT_LT(std::abs(r.e_v), 1e-9);
  }
}

TEST(Engine, EulerAndRk4Agree) {
  ScenarioConfig a = short_run(1.0);
  a.disturbance = DisturbanceProfile::none();
  ScenarioConfig b = a;
  b.integrator = Integrator::Euler;
  Simulation sa(a), sb(b);
  run_simulation(sa);
  run_simulation(sb);
  auto rel = [](const Vec3& x, const Vec3& y) { return (x - y).norm() / std::max(1e-12, y.norm()); };
  EXPECT_LT(rel(sb.state().velocity, sa.state().velocity), 1e-4);
  EXPECT_LT(rel(sb.state().euler, sa.state().euler), 1e-4);
  EXPECT_LT(rel(sb.state().position, sa.state().position), 1e-4);
}

TEST(Engine, Deterministic) {
  const ScenarioConfig cfg = short_run(3.0);
  EXPECT_EQ(csv_text(cfg), csv_text(cfg));
  std::ostringstream s1, s2;
  write_summary(s1, summary_fields(run_scenario(cfg)), describe(cfg));
  write_summary(s2, summary_fields(run_scenario(cfg)), describe(cfg));
  EXPECT_EQ(s1.str(), s2.str());
}

TEST(Engine, SeedChangesInitialWeights) {
  ScenarioConfig a = short_run(0.01), b = a;
  b.seed = 2;
  EXPECT_NE(csv_text(a), csv_text(b));
}

TEST(Engine, ControllerInvariantsOverTenSeconds) {
  const ScenarioConfig cfg = short_run(10.0);
  const auto rec = collect(cfg);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const auto& r = rec[i];
    ASSERT_GE(r.l, cfg.smc_attitude.l_floor - 1e-15);
    ASSERT_GE(r.r, cfg.smc_attitude.r_m);
    ASSERT_GE(r.lv, cfg.smc_airspeed.l_floor - 1e-15);
    ASSERT_GE(r.rv, cfg.smc_airspeed.r_mv);
    if (i) {
      ASSERT_GE(r.k1, rec[i - 1].k1);
    }
    ASSERT_LT(r.wc_norm, 1e3);
    ASSERT_LT(r.wa_norm, 1e3);
    ASSERT_TRUE(std::isfinite(r.hjb_residual));
  }
}

TEST(Engine, PluggedAirspeedLaw) {
  Simulation sim(short_run(0.2));
  auto law = std::make_unique<ConstantThrust>(1.25);
  ConstantThrust* raw = law.get();
  sim.set_airspeed_law(std::move(law));
  std::vector<StepRecord> rec;
  run_simulation(sim, [&](const StepRecord& r) { rec.push_back(r); });
  ASSERT_EQ(rec.size(), 200u);
  for (const auto& r : rec) {
    ASSERT_EQ(r.thrust, 1.25);
    ASSERT_TRUE(std::isnan(r.lv));
  }
  EXPECT_EQ(raw->advances, 200);
  EXPECT_EQ(sim.airspeed_law().name(), "constant");
}

TEST(Engine, LawsFixedAfterFirstStep) {
  Simulation sim(short_run(0.1));
  sim.step();
  EXPECT_THROW(sim.set_airspeed_law(std::make_unique<ConstantThrust>(0.0)), std::logic_error);
  EXPECT_THROW(sim.set_attitude_law(nullptr), std::logic_error);
}

TEST(Engine, ThrustLimit) {
  ScenarioConfig cfg = short_run(1.0);
  cfg.thrust_limit = 0.5;
  for (const auto& r : collect(cfg)) ASSERT_LE(std::abs(r.thrust), 0.5);
}

TEST(Engine, DragOnlyAeroModelAbortsWithDiagnostic) {
  ScenarioConfig cfg = short_run(20.0);
  cfg.uav.aero_model = AeroModel::Drag;
  RunSummary s;
  const auto rec = collect(cfg, &s);
  EXPECT_EQ(s.status, "aborted");
  EXPECT_FALSE(s.abort_reason.empty());
  EXPECT_GT(s.abort_time, 0.0);
  EXPECT_LT(s.abort_time, 20.0);
  EXPECT_EQ(static_cast<long>(rec.size()), s.steps);
}

TEST(Engine, InvalidConfigRejected) {
  ScenarioConfig cfg;
  cfg.dt = -1e-3;
  EXPECT_THROW(Simulation{cfg}, std::invalid_argument);
}

TEST(Record, ColumnOrder) {
  const auto& c = StepRecord::columns();
  ASSERT_EQ(c.size(), kRecordColumns);
  const std::vector<std::string_view> expected = {
      "t", "pos_x", "pos_y", "pos_z", "vel_u", "vel_v", "vel_w", "phi", "theta", "psi",
      "p", "q", "r", "phi_d", "theta_d", "psi_d", "airspeed", "airspeed_d", "alpha", "beta",
      "e_phi", "e_theta", "e_psi", "z_phi", "z_theta", "z_psi", "e_v", "s_1", "s_2", "s_3",
      "s_v", "m_x", "m_y", "m_z", "ms_x", "ms_y", "ms_z", "ma_x", "ma_y", "ma_z",
      "thrust", "thrust_s", "thrust_a", "k1", "l", "r_gain", "e_delta", "lv", "rv", "e_v_bar",
      "wc_norm", "wa_norm", "hjb_residual", "wc_rate_norm", "dm_x", "dm_y", "dm_z",
      "du_x", "du_y", "du_z", "dv", "iae", "iacm", "iae_v", "int_thrust"};
  ASSERT_EQ(expected.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i], expected[i]) << i;
}

TEST(Record, RowMatchesFields) {
  const auto rec = collect(short_run(0.3));
  const StepRecord& r = rec.back();
  const auto row = r.row();
  const auto& c = StepRecord::columns();
  auto at = [&](std::string_view name) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] == name) return row[i];
    return std::numeric_limits<double>::quiet_NaN();
  };
  EXPECT_EQ(at("t"), r.t);
  EXPECT_EQ(at("theta"), r.euler(1));
  EXPECT_EQ(at("s_v"), r.s_v);
  EXPECT_EQ(at("thrust_a"), r.thrust_a);
  EXPECT_EQ(at("k1"), r.k1);
  EXPECT_EQ(at("hjb_residual"), r.hjb_residual);
  EXPECT_EQ(at("du_z"), r.d_u(2));
  EXPECT_EQ(at("int_thrust"), r.int_thrust);
  EXPECT_LT((r.moment - r.moment_s - r.moment_a).norm(), 1e-12);
  EXPECT_NEAR(r.thrust, r.thrust_s + r.thrust_a, 1e-12);
}
