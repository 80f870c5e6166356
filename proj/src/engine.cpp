#include "adpasmc/engine.hpp"

#include <algorithm>
#include <cmath>

namespace adpasmc {

namespace {

constexpr double kReachBand = 1e-2;
constexpr double kSettleTime = 20.0;

// Plant state plus the integral states that must share the plant integrator.
using Augmented = Eigen::Matrix<double, 17, 1>;

Augmented pack(const UavState& s, const Vec3& ism_att, double ism_air, double ftsm) {
  Augmented x;
  x << s.position, s.velocity, s.euler, s.rates, ism_att, ism_air, ftsm;
  return x;
}

UavState unpack_plant(const Augmented& x) {
  UavState s;
  s.position = x.segment<3>(0);
  s.velocity = x.segment<3>(3);
  s.euler = x.segment<3>(6);
  s.rates = x.segment<3>(9);
  return s;
}

}  // namespace

const std::array<std::string_view, kRecordColumns>& StepRecord::columns() {
  static const std::array<std::string_view, kRecordColumns> names{
      "t",
      "pos_x", "pos_y", "pos_z",
      "vel_u", "vel_v", "vel_w",
      "phi", "theta", "psi",
      "p", "q", "r",
      "phi_d", "theta_d", "psi_d",
      "airspeed", "airspeed_d", "alpha", "beta",
      "e_phi", "e_theta", "e_psi",
      "z_phi", "z_theta", "z_psi",
      "e_v",
      "s_1", "s_2", "s_3", "s_v",
      "m_x", "m_y", "m_z",
      "ms_x", "ms_y", "ms_z",
      "ma_x", "ma_y", "ma_z",
      "thrust", "thrust_s", "thrust_a",
      "k1", "l", "r_gain", "e_delta",
      "lv", "rv", "e_v_bar",
      "wc_norm", "wa_norm", "hjb_residual", "wc_rate_norm",
      "dm_x", "dm_y", "dm_z",
      "du_x", "du_y", "du_z",
      "dv",
      "iae", "iacm", "iae_v", "int_thrust"};
  return names;
}

std::array<double, kRecordColumns> StepRecord::row() const {
  std::array<double, kRecordColumns> v{};
  std::size_t i = 0;
  auto put = [&](double x) { v[i++] = x; };
  auto put3 = [&](const Vec3& x) {
    put(x(0));
    put(x(1));
    put(x(2));
  };
  put(t);
  put3(position);
  put3(velocity);
  put3(euler);
  put3(rates);
  put3(euler_d);
  put(airspeed);
  put(airspeed_d);
  put(alpha);
  put(beta);
  put3(e_theta);
  put3(z_theta);
  put(e_v);
  put3(s);
  put(s_v);
  put3(moment);
  put3(moment_s);
  put3(moment_a);
  put(thrust);
  put(thrust_s);
  put(thrust_a);
  put(k1);
  put(l);
  put(r);
  put(e_delta);
  put(lv);
  put(rv);
  put(e_v_bar);
  put(wc_norm);
  put(wa_norm);
  put(hjb_residual);
  put(wc_rate_norm);
  put3(d_m);
  put3(d_u);
  put(d_v);
  put(iae);
  put(iacm);
  put(iae_v);
  put(int_thrust);
  return v;
}

void MetricAccumulator::add(double t, const Vec3& e_theta, const Vec3& moment, double e_v,
                            double thrust) {
  const double e = e_theta.cwiseAbs().sum();
  const double m = moment.cwiseAbs().sum();
  const double ev = std::abs(e_v);
  if (has_prev_) {
    const double h = 0.5 * (t - t_prev_);
    iae_ += h * (e + e_prev_);
    iacm_ += h * (m + m_prev_);
    iae_v_ += h * (ev + ev_prev_);
    int_thrust_ += h * (thrust + th_prev_);
  }
  has_prev_ = true;
  t_prev_ = t;
  e_prev_ = e;
  m_prev_ = m;
  ev_prev_ = ev;
  th_prev_ = thrust;
}

struct Simulation::Impl {
  Impl(const ScenarioConfig& cfg)
      : adp(cfg.adp, cfg.seed), inertia(cfg.uav.inertia()) {
    const UavState s0 = cfg.initial.state();
    x = pack(s0, Vec3::Zero(), 0.0, 0.0);
    plant = s0;
    attitude = std::make_unique<AsmcAttitudeLaw>(cfg.smc_attitude);
    if (cfg.airspeed_controller == AirspeedControllerKind::FtsmGst) {
      airspeed = std::make_unique<FtsmGstAirspeedLaw>(cfg.ftsm_gst);
    } else {
      airspeed = std::make_unique<AgstAirspeedLaw>(cfg.smc_airspeed);
    }
  }

  Augmented derivative(const ScenarioConfig& cfg, double t, const Augmented& xs,
                       const Vec3& moment, double thrust, const Vec3& moment_a,
                       double thrust_a) const {
    const UavState s = unpack_plant(xs);
    const DisturbanceSample dist = cfg.disturbance.sample(t);
    const ReferenceSample ref = cfg.reference.sample(t);
    const UavParams& p = cfg.uav;
    const UavState d =
        plant_derivative(s, p, moment, thrust, aerodynamic_force(s, p, thrust), dist);
    const AirspeedQuantities air = airspeed_quantities(s, p);
    const Mat3 r_theta = rotation_r_theta(s.euler, p.euler_convention, p.theta_margin);

    Augmented dx;
    dx.segment<3>(0) = d.position;
    dx.segment<3>(3) = d.velocity;
    dx.segment<3>(6) = d.euler;
    dx.segment<3>(9) = d.rates;
    dx.segment<3>(12) = r_theta * inertia.ldlt().solve(moment_a) - ref.theta_ddot;
    dx(15) = -air.g_v - ref.airspeed_dot + (air.cos_ab() * thrust_a - air.drag) / p.mass;
    dx(16) = ftsm_integrand(air.airspeed - ref.airspeed, cfg.ftsm_gst);
    return dx;
  }

  AdpController adp;
  Mat3 inertia;
  Augmented x;
  UavState plant;
  std::unique_ptr<AttitudeLaw> attitude;
  std::unique_ptr<AirspeedLaw> airspeed;
  MetricAccumulator metrics;
};

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config)) {
  config_.validate();
  total_steps_ = config_.step_count();
  impl_ = std::make_unique<Impl>(config_);
}

Simulation::~Simulation() = default;

void Simulation::set_airspeed_law(std::unique_ptr<AirspeedLaw> law) {
  if (step_ != 0) throw std::logic_error("airspeed law can only be replaced before the first step");
  if (!law) throw std::invalid_argument("airspeed law must not be null");
  impl_->airspeed = std::move(law);
}

void Simulation::set_attitude_law(std::unique_ptr<AttitudeLaw> law) {
  if (step_ != 0) throw std::logic_error("attitude law can only be replaced before the first step");
  if (!law) throw std::invalid_argument("attitude law must not be null");
  impl_->attitude = std::move(law);
}

const UavState& Simulation::state() const { return impl_->plant; }
const AdpController& Simulation::adp() const { return impl_->adp; }
const AirspeedLaw& Simulation::airspeed_law() const { return *impl_->airspeed; }
const AttitudeLaw& Simulation::attitude_law() const { return *impl_->attitude; }

StepRecord Simulation::step() {
  if (finished()) throw std::logic_error("simulation already finished");
  Impl& m = *impl_;
  const ScenarioConfig& cfg = config_;
  const UavParams& p = cfg.uav;
  const double dt = cfg.dt;
  const double t = time();

  const UavState& s = m.plant;
  const ReferenceSample ref = cfg.reference.sample(t);
  const DisturbanceSample dist = cfg.disturbance.sample(t);
  const AirspeedQuantities air = airspeed_quantities(s, p);
  const Mat3 r_theta = rotation_r_theta(s.euler, p.euler_convention, p.theta_margin);

  // Error rates use the measured Euler rates, which include the rate disturbance.
  ComState com;
  com.e_theta = s.euler - ref.theta;
  com.z_theta = r_theta * s.rates + dist.d_u - ref.theta_dot;
  com.e_v = air.airspeed - ref.airspeed;

  const CombinedError ce =
      assemble_combined(com, r_theta, m.inertia, air, p.mass, ref.theta_ddot, ref.airspeed_dot);
  const Vec4 u_adp = m.adp.control(ce);
  const Vec3 moment_a = u_adp.head<3>();
  const double thrust_a = u_adp(3);

  AttitudeContext actx;
  actx.t = t;
  actx.inertia = m.inertia;
  actx.r_theta = r_theta;
  actx.drift = attitude_drift(s, p);
  actx.surface = sliding_s(com.z_theta, m.x.segment<3>(12));
  actx.adp_moment = moment_a;

  AirspeedContext sctx;
  sctx.t = t;
  sctx.mass = p.mass;
  sctx.air = air;
  sctx.e_v = com.e_v;
  sctx.v_dot_d = ref.airspeed_dot;
  sctx.adp_thrust = thrust_a;
  sctx.agst_surface = com.e_v - m.x(15);
  sctx.ftsm_integral = m.x(16);

  const Vec3 moment = m.attitude->moment(actx);
  const Vec3 moment_s = m.attitude->robust_moment(actx);
  double thrust = m.airspeed->thrust(sctx);
  const double thrust_s = m.airspeed->robust_thrust(sctx);
  if (cfg.thrust_limit > 0.0) thrust = std::clamp(thrust, -cfg.thrust_limit, cfg.thrust_limit);

  StepRecord rec;
  rec.t = t;
  rec.position = s.position;
  rec.velocity = s.velocity;
  rec.euler = s.euler;
  rec.rates = s.rates;
  rec.euler_d = ref.theta;
  rec.airspeed = air.airspeed;
  rec.airspeed_d = ref.airspeed;
  rec.alpha = air.alpha;
  rec.beta = air.beta;
  rec.e_theta = com.e_theta;
  rec.z_theta = com.z_theta;
  rec.e_v = com.e_v;
  rec.s = actx.surface;
  rec.s_v = m.airspeed->surface(sctx);
  rec.moment = moment;
  rec.moment_s = moment_s;
  rec.moment_a = moment_a;
  rec.thrust = thrust;
  rec.thrust_s = thrust_s;
  rec.thrust_a = thrust_a;
  const AttitudeGains ag = m.attitude->gains();
  rec.k1 = ag.k1;
  rec.l = ag.l;
  rec.r = ag.r;
  rec.e_delta = ag.e_delta;
  const AirspeedGains sg = m.airspeed->gains();
  rec.lv = sg.lv;
  rec.rv = sg.rv;
  rec.e_v_bar = sg.e_v_bar;
  rec.wc_norm = m.adp.critic_weights().norm();
  rec.wa_norm = m.adp.actor_weights().norm();
  rec.d_m = dist.d_m;
  rec.d_u = dist.d_u;
  rec.d_v = dist.d_v;

  // Plant and integral states, zero-order hold on the inputs.
  auto f = [&](double tt, const Augmented& xs) {
    return m.derivative(cfg, tt, xs, moment, thrust, moment_a, thrust_a);
  };
  Augmented next;
  if (cfg.integrator == Integrator::Euler) {
    next = m.x + dt * f(t, m.x);
  } else {
    const Augmented k1 = f(t, m.x);
    const Augmented k2 = f(t + 0.5 * dt, m.x + 0.5 * dt * k1);
    const Augmented k3 = f(t + 0.5 * dt, m.x + 0.5 * dt * k2);
    const Augmented k4 = f(t + dt, m.x + dt * k3);
    next = m.x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!next.allFinite()) {
    throw SingularityError("non-finite state at t = " + std::to_string(t));
  }

  // Controller states, forward Euler from the same sample.
  m.attitude->advance(actx, dt);
  m.airspeed->advance(sctx, dt);
  m.adp.advance(ce, dt);
  rec.hjb_residual = m.adp.last_residual();
  rec.wc_rate_norm = m.adp.last_critic_rate_norm();

  m.metrics.add(t, com.e_theta, moment, com.e_v, thrust);
  rec.iae = m.metrics.iae();
  rec.iacm = m.metrics.iacm();
  rec.iae_v = m.metrics.iae_v();
  rec.int_thrust = m.metrics.int_thrust();

  m.x = next;
  m.plant = unpack_plant(next);
  ++step_;
  return rec;
}

RunSummary run_simulation(Simulation& sim, const RecordSink& sink) {
  RunSummary sum;
  sum.name = sim.config().name;
  StepRecord last;
  bool any = false;
  while (!sim.finished()) {
    StepRecord rec;
    try {
      rec = sim.step();
    } catch (const SingularityError& e) {
      sum.status = "aborted";
      sum.abort_reason = e.what();
      sum.abort_time = sim.time();
      break;
    }
    if (rec.s.norm() >= kReachBand) sum.reaching_time_s = rec.t + sim.config().dt;
    if (std::abs(rec.s_v) >= kReachBand) sum.reaching_time_sv = rec.t + sim.config().dt;
    if (rec.t > kSettleTime) {
      sum.max_e_theta_after_20 = std::max(sum.max_e_theta_after_20, rec.e_theta.norm());
      sum.max_e_v_after_20 = std::max(sum.max_e_v_after_20, std::abs(rec.e_v));
    }
    if (sink) sink(rec);
    last = rec;
    any = true;
  }
  sum.steps = sim.steps_taken();
  sum.final_time = sim.time();
  if (any) {
    sum.iae = last.iae;
    sum.iacm = last.iacm;
    sum.iae_v = last.iae_v;
    sum.int_thrust = last.int_thrust;
    sum.final_k1 = last.k1;
    sum.final_l = last.l;
    sum.final_r = last.r;
    sum.final_lv = last.lv;
    sum.final_rv = last.rv;
    sum.final_wc_norm = last.wc_norm;
    sum.final_wa_norm = last.wa_norm;
  }
  return sum;
}

RunSummary run_scenario(const ScenarioConfig& config, const RecordSink& sink) {
  Simulation sim(config);
  return run_simulation(sim, sink);
}

}  // namespace adpasmc
