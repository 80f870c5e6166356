#pragma once

#include "adpasmc/math.hpp"
#include "adpasmc/signal.hpp"

#include <array>

namespace adpasmc {

struct DisturbanceSample {
  Vec3 d_m = Vec3::Zero();  // matched moment, N m
  Vec3 d_u = Vec3::Zero();  // Euler-rate perturbation, rad/s
  double d_v = 0.0;         // airspeed acceleration, m/s^2
};

/// Per-channel disturbance signals of absolute time.
struct DisturbanceProfile {
  std::array<Signal, 3> d_m;
  std::array<Signal, 3> d_u;
  Signal d_v;

  DisturbanceSample sample(double t) const;

  /// Moment steps on at t = 5 s, Euler-rate sinusoids from t = 0, airspeed
  /// sinusoid from t = 6 s.
  static DisturbanceProfile benchmark();
  static DisturbanceProfile none();
};

/// Scalar benchmark disturbance on [0, 30) s. Throws std::out_of_range outside.
double siso_d(double t);

}  // namespace adpasmc
