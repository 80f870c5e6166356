#pragma once

#include "adpasmc/adp.hpp"
#include "adpasmc/controllers.hpp"
#include "adpasmc/disturbances.hpp"
#include "adpasmc/dynamics.hpp"
#include "adpasmc/signal.hpp"
#include "adpasmc/smc_airspeed.hpp"
#include "adpasmc/smc_attitude.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace adpasmc {

enum class Integrator { Euler, Rk4 };
enum class AirspeedControllerKind { AdpAsmc, FtsmGst };

struct ReferenceSample {
  Vec3 theta = Vec3::Zero();      // rad
  Vec3 theta_dot = Vec3::Zero();
  Vec3 theta_ddot = Vec3::Zero();
  double airspeed = 0.0;          // m/s
  double airspeed_dot = 0.0;
};

/// Attitude references are authored in degrees, airspeed in m/s.
struct ReferenceCommand {
  std::array<Signal, 3> theta_deg;
  Signal airspeed;

  ReferenceSample sample(double t) const;
};

struct InitialConditions {
  Vec3 position = Vec3::Zero();
  Vec3 euler_deg = Vec3(5.8, -11.5, 11.5);
  Vec3 rates_deg_s = Vec3(0.58, 1.15, 1.72);
  double airspeed = 0.4;   // along body x

  UavState state() const;
};

/// Quintic attitude steps from the initial attitude to (10, 5, 15) deg at t = 1 s
/// over 0.5 s, and an airspeed ramp from the initial airspeed to 20 m/s.
ReferenceCommand default_reference(const InitialConditions& ic);

/// Closed-loop tuning: a large initial k1 absorbs the moment steps, and a stiff
/// quadratic value term keeps the learned thrust ahead of drag during spin-up.
AttitudeSmcParams closed_loop_attitude_params();
AdpParams closed_loop_adp_params();

struct ScenarioConfig {
  std::string name = "paper_default";
  double duration = 120.0;
  double dt = 1e-3;
  Integrator integrator = Integrator::Rk4;
  std::uint64_t seed = 1;
  int decimate = 1;
  AirspeedControllerKind airspeed_controller = AirspeedControllerKind::AdpAsmc;
  double thrust_limit = 0.0;   // |T_x| bound, 0 disables

  UavParams uav;
  InitialConditions initial;
  ReferenceCommand reference = default_reference(InitialConditions{});
  std::string disturbance_preset = "benchmark";
  DisturbanceProfile disturbance = DisturbanceProfile::benchmark();
  AttitudeSmcParams smc_attitude = closed_loop_attitude_params();
  AirspeedSmcParams smc_airspeed;
  AdpParams adp = closed_loop_adp_params();
  FtsmGstParams ftsm_gst;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;

  long step_count() const;
};

}  // namespace adpasmc
