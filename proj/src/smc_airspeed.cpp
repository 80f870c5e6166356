#include "adpasmc/smc_airspeed.hpp"

#include "adpasmc/disturbances.hpp"

#include <cmath>
#include <string>

namespace adpasmc {

AirspeedSmcParams AirspeedSmcParams::siso_demo() {
  AirspeedSmcParams p;
  p.k1v = 1.35;
  p.k2v = 1.26;
  p.lv0 = 0.26;
  p.lv = 0.99;
  p.eps_v = 0.05;
  p.lambda_v0 = 0.38;
  p.r_bar_v = 7.0;
  p.e_b = 0.15;
  p.r_mv = 0.6;
  return p;
}

void AirspeedSmcParams::validate(const char* section) const {
  auto positive = [section](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(section) + "." + key + " must be > 0");
    }
  };
  positive(k1v, "k1v");
  positive(k2v, "k2v");
  positive(lv0, "lv0");
  positive(lv, "lv");
  if (!(lv < 1.0)) throw std::invalid_argument(std::string(section) + ".lv: lᵥ ∈ (0,1) required");
  positive(eps_v, "eps_v");
  positive(lambda_v0, "lambda_v0");
  positive(r_bar_v, "r_bar_v");
  positive(e_b, "e_b");
  if (!(e_b < 1.0)) throw std::invalid_argument(std::string(section) + ".e_b: e_b ∈ (0,1) required");
  positive(r_mv, "r_mv");
  positive(tau_f, "tau_f");
  positive(l_floor, "l_floor");
  if (!(s_deadzone >= 0.0)) {
    throw std::invalid_argument(std::string(section) + ".s_deadzone must be >= 0");
  }
}

AirspeedSmcState AirspeedSmcState::initial(const AirspeedSmcParams& p) {
  AirspeedSmcState s;
  s.rv = p.r_mv;
  return s;
}

double phi_v1(double s) { return pow_sign(s, 0.5) + s; }

double phi_v1_prime(double s) {
  if (std::abs(s) <= kSignZeroTol) {
    throw std::domain_error("phi_v1_prime: undefined at S = 0");
  }
  return 0.5 / std::sqrt(std::abs(s)) + 1.0;
}

double phi_v2(double s) { return 0.5 * sign(s) + 1.5 * pow_sign(s, 0.5) + s; }

double phi_v3(double lv, double lv_dot, double s, double deadzone) {
  if (std::abs(s) < deadzone || lv_dot == 0.0 || std::abs(s) <= kSignZeroTol) return 0.0;
  return -lv_dot * phi_v1(s) / (2.0 * lv * phi_v1_prime(s));
}

double control_txs(double mass, double alpha, double beta, double lv, double zv, double phi3,
                   double s, double k1v) {
  const double scale = mass / (std::cos(alpha) * std::cos(beta));
  return scale * (-k1v * std::sqrt(0.5 * lv) * phi_v1(s) + zv + phi3);
}

AirspeedSmc::AirspeedSmc(AirspeedSmcParams params, const char* section)
    : params_(params), state_(AirspeedSmcState::initial(params_)) {
  params_.validate(section);
}

double AirspeedSmc::acceleration(double s) const {
  const double l = lv();
  const double p3 = phi_v3(l, state_.lv_dot_last, s, params_.s_deadzone);
  return -params_.k1v * std::sqrt(0.5 * l) * phi_v1(s) + state_.zv + p3;
}

double AirspeedSmc::thrust(double mass, double alpha, double beta, double s) const {
  return mass / (std::cos(alpha) * std::cos(beta)) * acceleration(s);
}

void AirspeedSmc::advance(double s, double dt) {
  const AirspeedSmcParams& p = params_;
  const double l = lv();
  const GainAdaptation g =
      adapt_gain(p.lv0, state_.dlv, state_.rv, std::abs(state_.u_eqv_bar), p.lv, p.eps_v,
                 p.lambda_v0, p.r_bar_v, p.e_b, p.r_mv, p.l_floor, p.r_law, dt);
  state_.zv += -p.k2v * l * phi_v2(s) * dt;
  state_.u_eqv_bar =
      first_order_filter<double>(state_.u_eqv_bar, 0.5 * p.k2v * l * sign(s), p.tau_f, dt);
  state_.lv_dot_last = (g.dl - state_.dlv) / dt;
  state_.dlv = g.dl;
  state_.rv = g.r;
  state_.e_v_bar = g.e;
}

std::vector<SisoRecord> run_siso_demo(const AirspeedSmcParams& params,
                                      const SisoDemoOptions& options) {
  if (!(options.dt > 0.0)) throw std::invalid_argument("siso_demo.dt must be > 0");
  if (!(options.duration >= 0.0 && options.duration <= 30.0)) {
    throw std::invalid_argument("siso_demo.duration must lie in [0, 30]");
  }
  AirspeedSmc smc(params, "siso_demo");
  const auto steps = static_cast<long>(std::floor(options.duration / options.dt + 0.5));
  std::vector<SisoRecord> out;
  out.reserve(static_cast<std::size_t>(steps));
  double x = options.x0;
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * options.dt;
    const double d = options.disturbance ? options.disturbance(t) : siso_d(t);
    const double l = smc.lv();
    const double p3 = phi_v3(l, smc.state().lv_dot_last, x, params.s_deadzone);
    const double u = smc.acceleration(x);
    out.push_back({t, x, u, d, l, smc.state().rv, smc.state().e_v_bar, p3, smc.state().zv});
    smc.advance(x, options.dt);
    x += (u + d) * options.dt;
  }
  return out;
}

}  // namespace adpasmc
