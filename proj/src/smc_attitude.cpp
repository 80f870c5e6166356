#include "adpasmc/smc_attitude.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adpasmc {

namespace {

void positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("smc_attitude.") + key + " must be > 0");
  }
}

}  // namespace

void AttitudeSmcParams::validate() const {
  positive(k20, "k20");
  positive(kappa1, "kappa1");
  positive(kappa0, "kappa0");
  if (!(kappa0 < 1.0)) {
    throw std::invalid_argument("smc_attitude.kappa0: κ₀ ∈ (0,1) required, got " +
                                std::to_string(kappa0));
  }
  positive(l0, "l0");
  positive(al, "al");
  if (!(al < 1.0)) throw std::invalid_argument("smc_attitude.al: a·l ∈ (0,1) required");
  positive(eps, "eps");
  positive(lambda0, "lambda0");
  positive(r_bar, "r_bar");
  positive(e_bar, "e_bar");
  if (!(e_bar < 1.0)) throw std::invalid_argument("smc_attitude.e_bar: ē ∈ (0,1) required");
  positive(r_m, "r_m");
  positive(tau_f, "tau_f");
  positive(k1_init, "k1_init");
  positive(l_floor, "l_floor");
  if (!(s_deadzone >= 0.0)) throw std::invalid_argument("smc_attitude.s_deadzone must be >= 0");
}

AttitudeSmcState AttitudeSmcState::initial(const AttitudeSmcParams& p) {
  AttitudeSmcState s;
  s.k1 = p.k1_init;
  s.r = p.r_m;
  return s;
}

Vec3 sliding_s(const Vec3& z_theta, const Vec3& ism_integral) { return z_theta - ism_integral; }

Vec3 phi1(const Vec3& s) { return pow_sign(s, 0.5) + s; }

Vec3 phi2(const Vec3& s) { return 0.5 * msign(s) + 1.5 * pow_sign(s, 0.5) + s; }

Vec3 control_ms(const Mat3& inertia, const Mat3& r_theta, const Vec3& drift, double k1,
                const Vec3& z1, const Vec3& s) {
  return inertia * r_theta.partialPivLu().solve(-k1 * phi1(s) + z1 - drift);
}

double k1_rate(const Vec3& s, const AttitudeSmcParams& p) {
  const double n = s.norm();
  return n > p.s_deadzone ? p.kappa1 * n + p.kappa0 : 0.0;
}

GainAdaptation adapt_gain(double l0, double dl, double r, double u_eq_norm, double al, double eps,
                          double lambda0, double r_bar, double e_bar, double r_m, double l_floor,
                          RateLaw law, double dt) {
  GainAdaptation out;
  const double l = l0 + dl;
  out.e = 0.5 * l - u_eq_norm / al - eps;
  out.dl_rate = -(lambda0 + r) * sign(out.e);
  out.dl = std::max(dl + out.dl_rate * dt, l_floor - l0);

  const double mag = std::abs(out.e);
  if (r > r_m) {
    out.r = std::max(r + r_bar * mag * sign(mag - e_bar) * dt, r_m);
  } else if (law == RateLaw::Rate) {
    out.r = r + r_m * dt;
  } else {
    out.r = std::max(r + r_bar * mag * sign(mag - e_bar) * dt, r_m);
  }
  return out;
}

AttitudeSmc::AttitudeSmc(AttitudeSmcParams params)
    : params_(params), state_(AttitudeSmcState::initial(params_)) {
  params_.validate();
}

Vec3 AttitudeSmc::moment(const Mat3& inertia, const Mat3& r_theta, const Vec3& drift,
                         const Vec3& s) const {
  return control_ms(inertia, r_theta, drift, state_.k1, state_.z1, s);
}

void AttitudeSmc::advance(const Vec3& s, double dt) {
  const AttitudeSmcParams& p = params_;
  const double l = state_.l(p);
  const GainAdaptation g =
      adapt_gain(p.l0, state_.dl, state_.r, state_.u_eq_bar.norm(), p.al, p.eps, p.lambda0,
                 p.r_bar, p.e_bar, p.r_m, p.l_floor, p.r_law, dt);
  state_.z1 += -p.k20 * l * phi2(s) * dt;
  state_.k1 += k1_rate(s, p) * dt;
  state_.u_eq_bar =
      first_order_filter<Vec3>(state_.u_eq_bar, 0.5 * p.k20 * l * msign(s), p.tau_f, dt);
  state_.dl = g.dl;
  state_.r = g.r;
  state_.e_delta = g.e;
}

}  // namespace adpasmc
