#include "adpasmc/disturbances.hpp"
#include "adpasmc/signal.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace adpasmc;

TEST(Signal, Primitives) {
  EXPECT_EQ(Signal::zero().value(3.0), 0.0);
  EXPECT_EQ(Signal::constant(2.5).value(-1.0), 2.5);
  EXPECT_EQ(Signal::constant(2.5).rate(1.0), 0.0);
  const Signal s = Signal::sine(2.0, 3.0, 0.5);
  EXPECT_DOUBLE_EQ(s.value(0.7), 2.0 * std::sin(3.0 * 0.7 + 0.5));
  EXPECT_DOUBLE_EQ(s.rate(0.7), 6.0 * std::cos(3.0 * 0.7 + 0.5));
  EXPECT_DOUBLE_EQ(s.accel(0.7), -18.0 * std::sin(3.0 * 0.7 + 0.5));
  const Signal p = Signal::polynomial({1, -2, 3});
  EXPECT_DOUBLE_EQ(p.value(2.0), 1 - 4 + 12);
  EXPECT_DOUBLE_EQ(p.rate(2.0), -2 + 12);
  EXPECT_DOUBLE_EQ(p.accel(2.0), 6);
}

TEST(Signal, SmoothStepIsTwiceDifferentiable) {
  const Signal s = Signal::smooth_step(1.0, 0.5, 2.0, 4.0);
  EXPECT_EQ(s.value(0.0), 2.0);
  EXPECT_EQ(s.value(2.0), 4.0);
  EXPECT_DOUBLE_EQ(s.value(1.25), 3.0);
  for (double t : {1.0, 1.5}) {
    EXPECT_NEAR(s.rate(t), 0.0, 1e-12);
    EXPECT_NEAR(s.accel(t), 0.0, 1e-9);
  }
  const double h = 1e-6;
  for (double t = 1.01; t < 1.5; t += 0.07) {
    EXPECT_NEAR(s.rate(t), (s.value(t + h) - s.value(t - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(s.accel(t), (s.rate(t + h) - s.rate(t - h)) / (2 * h), 1e-4);
  }
  const Signal hard = Signal::smooth_step(1.0, 0.0, 0.0, 1.0);
  EXPECT_EQ(hard.value(0.999), 0.0);
  EXPECT_EQ(hard.value(1.0), 1.0);
}

TEST(Signal, PiecewiseHalfOpen) {
  const Signal s = Signal::piecewise({{1.0, Signal::constant(1)}, {2.0, Signal::constant(2)}});
  EXPECT_EQ(s.value(0.5), 0.0);
  EXPECT_EQ(s.value(1.0), 1.0);
  EXPECT_EQ(s.value(1.999), 1.0);
  EXPECT_EQ(s.value(2.0), 2.0);
  EXPECT_THROW(Signal::piecewise({{2.0, Signal::zero()}, {2.0, Signal::zero()}}), std::invalid_argument);
}

TEST(Signal, ParseAndArithmetic) {
  const Signal s = Signal::parse("sine(2, pi/4, 0) + scale(3, const(1)) - poly(0, 1)");
  const double t = 0.9;
  EXPECT_DOUBLE_EQ(s.value(t), 2 * std::sin(M_PI / 4 * t) + 3 - t);
  EXPECT_DOUBLE_EQ(Signal::parse("const(2*(3-1)/4)").value(0), 1.0);
  EXPECT_DOUBLE_EQ(Signal::parse("const(-1e-3)").value(0), -1e-3);
}

TEST(Signal, ParseErrors) {
  EXPECT_THROW(Signal::parse(""), std::invalid_argument);
  EXPECT_THROW(Signal::parse("sine(1, 2)"), std::invalid_argument);
  EXPECT_THROW(Signal::parse("bogus(1)"), std::invalid_argument);
  EXPECT_THROW(Signal::parse("const(1) junk"), std::invalid_argument);
  EXPECT_THROW(Signal::parse("piecewise(2: zero, 1: zero)"), std::invalid_argument);
}

TEST(Signal, TextRoundTrip) {
  for (const char* text : {"zero", "const(0.1)", "sine(1.5, 0.18479956785822313, 0)",
                           "piecewise(0: zero, 5: sine(1.5, pi/17, 0))",
                           "step(1, 0.5, 5.8, 10) + poly(1, 2, 3)", "scale(-2, sine(1, 1, 1))"}) {
    const Signal a = Signal::parse(text);
    const Signal b = Signal::parse(a.to_string());
    EXPECT_EQ(a.to_string(), b.to_string()) << text;
    for (double t = 0; t < 10; t += 0.37) EXPECT_EQ(a.value(t), b.value(t)) << text;
  }
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2e-3), "0.002");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(BenchmarkDisturbance, Values) {
  const auto p = DisturbanceProfile::benchmark();
  const auto at3 = p.sample(3.0);
  EXPECT_TRUE(at3.d_m.isZero());
  EXPECT_EQ(at3.d_v, 0.0);
  EXPECT_DOUBLE_EQ(p.sample(6.0).d_v, 5.0 * std::sin(1.2));
  EXPECT_DOUBLE_EQ(p.sample(5.0).d_m(0), 1.5 * std::sin(5 * M_PI / 17));
  EXPECT_DOUBLE_EQ(p.sample(5.0).d_m(1), 0.8 * std::sin(5 * M_PI / 15));
  EXPECT_DOUBLE_EQ(p.sample(5.0).d_m(2), 1.1 * std::sin(5 * M_PI / 16));
  const auto at19 = p.sample(19.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(at19.d_u(i), 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(p.sample(4.0).d_u(1), 2.1 * std::sin(4 * M_PI / 19));
}

TEST(BenchmarkDisturbance, UnmatchedBoundAndDeterminism) {
  const auto p = DisturbanceProfile::benchmark();
  for (double t = 0; t < 120; t += 0.013) {
    const auto a = p.sample(t), b = p.sample(t);
    EXPECT_LE(a.d_u.norm(), 2.1 * std::sqrt(3.0) + 1e-12);
    EXPECT_EQ(a.d_m, b.d_m);
    EXPECT_EQ(a.d_u, b.d_u);
    EXPECT_EQ(a.d_v, b.d_v);
  }
}

TEST(NoDisturbance, AllZero) {
  const auto s = DisturbanceProfile::none().sample(7.0);
  EXPECT_TRUE(s.d_m.isZero());
  EXPECT_TRUE(s.d_u.isZero());
  EXPECT_EQ(s.d_v, 0.0);
}

TEST(SisoDisturbance, Branches) {
  EXPECT_EQ(siso_d(0.0), 0.0);
  EXPECT_NEAR(siso_d(5.0), 2.0 / M_PI, 1e-15);
  EXPECT_DOUBLE_EQ(siso_d(12.0), -1.5);
  EXPECT_DOUBLE_EQ(siso_d(10.0), 9.375 - 12.5);
  EXPECT_NEAR(siso_d(25.0), 5.0 / M_PI * std::sin(12.5 * M_PI), 1e-14);
  EXPECT_THROW(siso_d(30.0), std::out_of_range);
  EXPECT_THROW(siso_d(-0.1), std::out_of_range);
}
