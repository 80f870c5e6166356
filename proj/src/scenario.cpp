#include "adpasmc/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace adpasmc {

ReferenceSample ReferenceCommand::sample(double t) const {
  ReferenceSample r;
  for (int i = 0; i < 3; ++i) {
    r.theta(i) = deg2rad(theta_deg[i].value(t));
    r.theta_dot(i) = deg2rad(theta_deg[i].rate(t));
    r.theta_ddot(i) = deg2rad(theta_deg[i].accel(t));
  }
  r.airspeed = airspeed.value(t);
  r.airspeed_dot = airspeed.rate(t);
  return r;
}

UavState InitialConditions::state() const {
  UavState s;
  s.position = position;
  s.velocity = Vec3(airspeed, 0.0, 0.0);
  s.euler = euler_deg.unaryExpr([](double d) { return deg2rad(d); });
  s.rates = rates_deg_s.unaryExpr([](double d) { return deg2rad(d); });
  return s;
}

ReferenceCommand default_reference(const InitialConditions& ic) {
  const Vec3 target(10.0, 5.0, 15.0);
  ReferenceCommand ref;
  for (int i = 0; i < 3; ++i) {
    ref.theta_deg[i] = Signal::smooth_step(1.0, 0.5, ic.euler_deg(i), target(i));
  }
  ref.airspeed = Signal::smooth_step(1.0, 5.0, ic.airspeed, 20.0);
  return ref;
}

AttitudeSmcParams closed_loop_attitude_params() {
  AttitudeSmcParams p;
  p.k1_init = 30.0;
  return p;
}

AdpParams closed_loop_adp_params() {
  AdpParams p;
  p.beta_w = 100.0;
  return p;
}

long ScenarioConfig::step_count() const {
  return static_cast<long>(std::floor(duration / dt + 0.5));
}

void ScenarioConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be >= 0");
  }
  if (decimate < 1) throw std::invalid_argument("decimate must be >= 1");
  if (!(thrust_limit >= 0.0)) throw std::invalid_argument("thrust_limit must be >= 0");
  uav.validate();
  if (!(initial.airspeed >= uav.min_airspeed)) {
    throw std::invalid_argument("initial.airspeed must be >= uav.min_airspeed");
  }
  if (std::abs(std::cos(deg2rad(initial.euler_deg(1)))) <= std::sin(uav.theta_margin)) {
    throw std::invalid_argument("initial.euler_deg: pitch within singularity margin");
  }
  smc_attitude.validate();
  smc_airspeed.validate();
  adp.validate();
  ftsm_gst.validate();
}

}  // namespace adpasmc
