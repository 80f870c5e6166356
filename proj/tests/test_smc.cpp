#include "adpasmc/dynamics.hpp"
#include "adpasmc/smc_airspeed.hpp"
#include "adpasmc/smc_attitude.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace adpasmc;
using namespace adpasmc::testing;

namespace {

GainAdaptation table1_step(double dl, double r, double u_eq_norm, double dt = 1e-3) {
  const AttitudeSmcParams p;
  return adapt_gain(p.l0, dl, r, u_eq_norm, p.al, p.eps, p.lambda0, p.r_bar, p.e_bar, p.r_m,
                    p.l_floor, p.r_law, dt);
}

}  // namespace

TEST(Surface, Attitude) {
  EXPECT_TRUE(sliding_s(Vec3(1, 2, 3), Vec3(1, 2, 3)).isZero());
  EXPECT_EQ(sliding_s(Vec3(1, 0, 0), Vec3::Zero()), Vec3(1, 0, 0));
  // One Euler step of the integrand with M_a = 0 and theta_dd_d = (1, 0, 0).
  const Vec3 integral = Vec3::Zero() + 1e-3 * (Vec3::Zero() - Vec3(1, 0, 0));
  EXPECT_EQ(integral, Vec3(-1e-3, 0, 0));
  EXPECT_EQ(sliding_s(Vec3::Zero(), integral), Vec3(1e-3, 0, 0));
}

TEST(Shaping, AttitudeValues) {
  EXPECT_LT((phi1(Vec3(1, 0, 0)) - Vec3(2, 0, 0)).norm(), 1e-15);
  EXPECT_LT((phi2(Vec3(1, 0, 0)) - Vec3(3, 0, 0)).norm(), 1e-15);
  EXPECT_TRUE(phi1(Vec3::Zero()).isZero());
  EXPECT_TRUE(phi2(Vec3::Zero()).isZero());
  EXPECT_LT((phi1(Vec3(4, 0, 0)) - Vec3(6, 0, 0)).norm(), 1e-15);
}

TEST(Shaping, ScalarDerivativeIdentity) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 10000; ++i) {
    const double s = u(rng);
    const double d1 = 0.5 / std::sqrt(std::abs(s)) + 1.0;
    EXPECT_LT(rel_err(phi_v2(s), d1 * phi_v1(s)), 1e-10);
    EXPECT_LT(rel_err(phi_v2(s), phi_v1_prime(s) * phi_v1(s)), 1e-10);
    EXPECT_LT(rel_err(phi2(Vec3(s, 0, 0))(0), d1 * phi1(Vec3(s, 0, 0))(0)), 1e-10);
  }
}

TEST(Moment, VanishesAtRest) {
  UavParams p;
  UavState s;
  const Mat3 r = rotation_r_theta(s.euler, p.euler_convention);
  EXPECT_TRUE(control_ms(p.inertia(), r, attitude_drift(s, p), 1.0, Vec3::Zero(), Vec3::Zero()).isZero());
}

TEST(Moment, HandProduct) {
  UavParams p;
  p.ixz = 0;
  const Mat3 r = rotation_r_theta(Vec3::Zero(), EulerConvention::Rotated);
  const Vec3 m = control_ms(p.inertia(), r, Vec3::Zero(), 2.0, Vec3::Zero(), Vec3(1, 0, 0));
  // R_theta(0) maps (p,q,r) -> (q,r,p); its inverse maps (-4,0,0) to (0,-4,0).
  EXPECT_LT((m - Vec3(0, -4 * p.iyy, 0)).norm(), 1e-14);
}

TEST(K1, Rate) {
  const AttitudeSmcParams p;
  EXPECT_EQ(k1_rate(Vec3::Zero(), p), 0.0);
  EXPECT_EQ(k1_rate(Vec3(1e-7, 0, 0), p), 0.0);
  EXPECT_NEAR(k1_rate(Vec3(1, 0, 0), p) * 1e-3, 8.2e-3, 1e-15);
}

TEST(GainLaw, AdaptationErrorHandValue) {
  const auto g = table1_step(0.0, 0.6, 0.1);
  EXPECT_NEAR(g.e, 0.15 - 0.1 / 0.99 - 0.01, 1e-15);
  EXPECT_NEAR(g.e, 0.03899, 1e-5);
}

TEST(GainLaw, LargeEquivalentControlRaisesL) {
  const auto g = table1_step(0.0, 2.0, 10.0);
  EXPECT_LT(g.e, 0.0);
  EXPECT_NEAR(g.dl_rate, 0.01 + 2.0, 1e-15);
  EXPECT_NEAR(g.dl, (0.01 + 2.0) * 1e-3, 1e-15);
}

TEST(GainLaw, SecondLayerDecaysInsideBand) {
  // L chosen so |e| < e_bar.
  const auto g = table1_step(0.0, 3.0, 0.1);
  EXPECT_LT(std::abs(g.e), 0.1);
  EXPECT_LT(g.r, 3.0);
}

TEST(GainLaw, SecondLayerGrowsOutsideBand) {
  const auto g = table1_step(5.0, 3.0, 0.0);
  EXPECT_GT(std::abs(g.e), 0.1);
  EXPECT_GT(g.r, 3.0);
}

TEST(GainLaw, FloorsHold) {
  const AttitudeSmcParams p;
  double dl = 0.0, r = p.r_m;
  for (int i = 0; i < 100000; ++i) {
    const auto g = adapt_gain(p.l0, dl, r, 0.0, p.al, p.eps, p.lambda0, p.r_bar, p.e_bar, p.r_m,
                              p.l_floor, RateLaw::Rate, 1e-3);
    dl = g.dl;
    r = g.r;
    ASSERT_GE(p.l0 + dl, p.l_floor - 1e-15);
    ASSERT_GE(r, p.r_m);
  }
}

TEST(GainLaw, RateVersusClampAtFloor) {
  const AttitudeSmcParams p;
  const auto rate = adapt_gain(p.l0, 0, p.r_m, 0.1, p.al, p.eps, p.lambda0, p.r_bar, p.e_bar,
                               p.r_m, p.l_floor, RateLaw::Rate, 1e-3);
  EXPECT_NEAR(rate.r, p.r_m + p.r_m * 1e-3, 1e-15);
  const auto clamp = adapt_gain(p.l0, 0, p.r_m, 0.1, p.al, p.eps, p.lambda0, p.r_bar, p.e_bar,
                                p.r_m, p.l_floor, RateLaw::Clamp, 1e-3);
  EXPECT_EQ(clamp.r, p.r_m);
}

TEST(Filter, ExponentialResponse) {
  EXPECT_NEAR(first_order_filter(1.0, 0.0, 0.01, 0.01), std::exp(-1.0), 1e-15);
  double x = 0;
  for (int i = 0; i < 10000; ++i) x = first_order_filter(x, 2.5, 0.01, 1e-3);
  EXPECT_NEAR(x, 2.5, 1e-12);
  x = 0;
  for (int i = 0; i < 10000; ++i) {
    const double input = (i / 37) % 2 ? 1.5 : -1.5;
    x = first_order_filter(x, input, 0.01, 1e-3);
    ASSERT_LE(std::abs(x), 1.5);
  }
}

TEST(AttitudeController, K1NonDecreasingAndLPositive) {
  AttitudeSmc smc{AttitudeSmcParams{}};
  std::mt19937_64 rng(53);
  double k1 = smc.state().k1;
  for (int i = 0; i < 20000; ++i) {
    smc.advance(uniform_vec<3>(rng, -1, 1) * (i % 3 == 0 ? 0.0 : 1.0), 1e-3);
    ASSERT_GE(smc.state().k1, k1);
    ASSERT_GE(smc.l(), AttitudeSmcParams{}.l_floor - 1e-15);
    ASSERT_GE(smc.state().r, AttitudeSmcParams{}.r_m);
    k1 = smc.state().k1;
  }
}

TEST(AttitudeParams, Validation) {
  AttitudeSmcParams p;
  EXPECT_NO_THROW(p.validate());
  p.kappa0 = 1.5;
  try {
    p.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("κ₀ ∈ (0,1)"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("smc_attitude.kappa0"), std::string::npos);
  }
  p = AttitudeSmcParams{};
  p.al = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = AttitudeSmcParams{};
  p.e_bar = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(AirspeedSurface, IntegralStep) {
  const double integral = 0.0 + 1e-3 * 2.0;
  EXPECT_DOUBLE_EQ(integral, 2e-3);
}

TEST(Thrust, Values) {
  EXPECT_EQ(control_txs(1.56, 0, 0, 0.55, 0, 0, 0, 5), 0.0);
  EXPECT_DOUBLE_EQ(control_txs(1.0, 0, 0, 2.0, 0, 0, 1.0, 5.0), -10.0);
  EXPECT_NEAR(phi_v3(2.0, 0.4, 1.0, 1e-6), -2.0 / 15.0, 1e-15);
  EXPECT_EQ(phi_v3(2.0, 0.0, 1.0, 1e-6), 0.0);
  EXPECT_EQ(phi_v3(2.0, 0.4, 0.0, 1e-6), 0.0);
  EXPECT_EQ(phi_v3(2.0, 0.4, 1e-7, 1e-6), 0.0);
  EXPECT_THROW(phi_v1_prime(0.0), std::domain_error);
}

TEST(AirspeedGainLaw, HandValue) {
  const AirspeedSmcParams p;
  const auto g = adapt_gain(p.lv0, 0, p.r_mv, 0.1, p.lv, p.eps_v, p.lambda_v0, p.r_bar_v, p.e_b,
                            p.r_mv, p.l_floor, p.r_law, 1e-3);
  EXPECT_NEAR(g.e, 0.275 - 0.1 / 0.99 - 0.05, 1e-15);
  EXPECT_NEAR(g.e, 0.12399, 1e-5);
  const auto up = adapt_gain(p.lv0, 0, 1.0, 10.0, p.lv, p.eps_v, p.lambda_v0, p.r_bar_v, p.e_b,
                             p.r_mv, p.l_floor, p.r_law, 1e-3);
  EXPECT_NEAR(up.dl_rate, p.lambda_v0 + 1.0, 1e-15);
}

TEST(AirspeedController, StoresAppliedRate) {
  AirspeedSmc smc{AirspeedSmcParams{}};
  smc.advance(0.5, 1e-3);
  const double expected = -(AirspeedSmcParams{}.lambda_v0 + AirspeedSmcParams{}.r_mv) *
                          sign(smc.state().e_v_bar);
  EXPECT_NEAR(smc.state().lv_dot_last, expected, 1e-9);
}

TEST(AirspeedParams, Validation) {
  AirspeedSmcParams p;
  EXPECT_NO_THROW(p.validate());
  p.lv = 1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = AirspeedSmcParams{};
  p.k1v = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(SisoDemo, EquilibriumWithoutDisturbance) {
  SisoDemoOptions o;
  o.x0 = 0.0;
  o.disturbance = [](double) { return 0.0; };
  for (const SisoRecord& r : run_siso_demo(AirspeedSmcParams::siso_demo(), o)) {
    ASSERT_EQ(r.x, 0.0);
    ASSERT_EQ(r.u, 0.0);
  }
}

TEST(SisoDemo, ShapeAndInvariants) {
  const auto p = AirspeedSmcParams::siso_demo();
  const auto rec = run_siso_demo(p);
  ASSERT_EQ(rec.size(), 30000u);
  EXPECT_EQ(rec.front().t, 0.0);
  EXPECT_EQ(rec.front().x, 1.0);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    ASSERT_GE(rec[i].lv, p.l_floor - 1e-15);
    ASSERT_GE(rec[i].rv, p.r_mv);
    if (i) {
      ASSERT_GT(rec[i].t, rec[i - 1].t);
    }
  }
  // Between the disturbance jumps the state settles close to zero.
  for (const auto& r : rec) {
    if ((r.t > 5 && r.t < 10) || (r.t > 15 && r.t < 20) || r.t > 25) {
      ASSERT_LT(std::abs(r.x), 0.05) << "t=" << r.t;
    }
  }
  EXPECT_THROW(run_siso_demo(p, {31.0, 1e-3, 1.0, {}}), std::invalid_argument);
}
