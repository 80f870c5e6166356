#pragma once

#include "adpasmc/adp.hpp"
#include "adpasmc/controllers.hpp"
#include "adpasmc/scenario.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace adpasmc {

inline constexpr std::size_t kRecordColumns = 65;

/// One logged sample, taken at the start of a step. Integrals (iae ... int_thrust)
/// are trapezoid sums over the logged samples up to and including this one.
struct StepRecord {
  double t = 0.0;
  Vec3 position, velocity, euler, rates;
  Vec3 euler_d;
  double airspeed = 0.0, airspeed_d = 0.0, alpha = 0.0, beta = 0.0;
  Vec3 e_theta, z_theta;
  double e_v = 0.0;
  Vec3 s;
  double s_v = 0.0;
  Vec3 moment, moment_s, moment_a;
  double thrust = 0.0, thrust_s = 0.0, thrust_a = 0.0;
  double k1 = 0.0, l = 0.0, r = 0.0, e_delta = 0.0;
  double lv = 0.0, rv = 0.0, e_v_bar = 0.0;
  double wc_norm = 0.0, wa_norm = 0.0, hjb_residual = 0.0, wc_rate_norm = 0.0;
  Vec3 d_m, d_u;
  double d_v = 0.0;
  double iae = 0.0, iacm = 0.0, iae_v = 0.0, int_thrust = 0.0;

  static const std::array<std::string_view, kRecordColumns>& columns();
  std::array<double, kRecordColumns> row() const;
};

/// Trapezoid integrals of |e_theta|_1, |M|_1, |e_v| and T_x over a sample stream.
class MetricAccumulator {
 public:
  void add(double t, const Vec3& e_theta, const Vec3& moment, double e_v, double thrust);
  double iae() const { return iae_; }
  double iacm() const { return iacm_; }
  double iae_v() const { return iae_v_; }
  double int_thrust() const { return int_thrust_; }

 private:
  bool has_prev_ = false;
  double t_prev_ = 0.0, e_prev_ = 0.0, m_prev_ = 0.0, ev_prev_ = 0.0, th_prev_ = 0.0;
  double iae_ = 0.0, iacm_ = 0.0, iae_v_ = 0.0, int_thrust_ = 0.0;
};

struct RunSummary {
  std::string name;
  std::string status = "ok";      // ok | aborted
  std::string abort_reason;
  double abort_time = 0.0;
  long steps = 0;
  double final_time = 0.0;
  double iae = 0.0, iacm = 0.0, iae_v = 0.0, int_thrust = 0.0;
  double reaching_time_s = 0.0;   // last sample with |S| >= 1e-2 (0 if none)
  double reaching_time_sv = 0.0;
  double max_e_theta_after_20 = 0.0;
  double max_e_v_after_20 = 0.0;
  double final_k1 = 0.0, final_l = 0.0, final_r = 0.0, final_lv = 0.0, final_rv = 0.0;
  double final_wc_norm = 0.0, final_wa_norm = 0.0;
};

/// Fixed-step closed-loop simulation of one scenario.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Replace the airspeed or attitude law before the first step.
  void set_airspeed_law(std::unique_ptr<AirspeedLaw> law);
  void set_attitude_law(std::unique_ptr<AttitudeLaw> law);

  const ScenarioConfig& config() const { return config_; }
  long total_steps() const { return total_steps_; }
  long steps_taken() const { return step_; }
  bool finished() const { return step_ >= total_steps_; }
  double time() const { return static_cast<double>(step_) * config_.dt; }
  const UavState& state() const;
  const AdpController& adp() const;
  const AirspeedLaw& airspeed_law() const;
  const AttitudeLaw& attitude_law() const;

  /// Advances one step and returns the sample at its start.
  /// Throws SingularityError when a margin is crossed or the state is not finite.
  StepRecord step();

 private:
  struct Impl;
  ScenarioConfig config_;
  long total_steps_ = 0;
  long step_ = 0;
  std::unique_ptr<Impl> impl_;
};

using RecordSink = std::function<void(const StepRecord&)>;

/// Runs the scenario to completion or abort. Singularity aborts are reported in
/// the summary, other errors propagate.
RunSummary run_scenario(const ScenarioConfig& config, const RecordSink& sink = {});
RunSummary run_simulation(Simulation& sim, const RecordSink& sink = {});

}  // namespace adpasmc
