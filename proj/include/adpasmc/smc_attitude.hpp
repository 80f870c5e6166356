#pragma once

#include "adpasmc/dynamics.hpp"
#include "adpasmc/math.hpp"

namespace adpasmc {

/// How the adaptation-rate variable behaves once it reaches its floor.
///  Rate  : below the floor it grows at the floor value per second
///  Clamp : it is held at the floor
enum class RateLaw { Rate, Clamp };

struct AttitudeSmcParams {
  double k20 = 1.0;        // integral super-twisting gain
  double kappa1 = 8.0;     // k1 growth per unit |S|
  double kappa0 = 0.2;     // k1 baseline growth, in (0,1)
  double l0 = 0.3;         // nominal L
  double al = 0.99;        // product a*l, in (0,1)
  double eps = 0.01;
  double lambda0 = 0.01;
  double r_bar = 10.0;
  double e_bar = 0.1;      // in (0,1)
  double r_m = 0.6;        // floor of r
  double tau_f = 0.01;     // equivalent-control filter constant, s
  double k1_init = 1.0;
  double l_floor = 0.01;   // L never drops below this
  double s_deadzone = 1e-6;
  RateLaw r_law = RateLaw::Rate;

  /// Throws std::invalid_argument with a "smc_attitude.<key>" message.
  void validate() const;
};

struct AttitudeSmcState {
  Vec3 z1 = Vec3::Zero();
  double k1 = 1.0;
  double dl = 0.0;          // L = l0 + dl
  double r = 0.6;
  Vec3 u_eq_bar = Vec3::Zero();
  Vec3 ism_integral = Vec3::Zero();
  double e_delta = 0.0;     // last adaptation error, diagnostic

  static AttitudeSmcState initial(const AttitudeSmcParams& p);
  double l(const AttitudeSmcParams& p) const { return p.l0 + dl; }
};

/// S = z_theta - integral of the nominal closed-loop acceleration.
Vec3 sliding_s(const Vec3& z_theta, const Vec3& ism_integral);

/// Phi1(S) = |S|^(1/2) msign(S) + S
Vec3 phi1(const Vec3& s);
/// Phi2(S) = 1/2 msign(S) + 3/2 |S|^(1/2) msign(S) + S
Vec3 phi2(const Vec3& s);

/// Sliding moment I R_theta^-1 (-k1 Phi1(S) + z1 - G).
Vec3 control_ms(const Mat3& inertia, const Mat3& r_theta, const Vec3& drift, double k1,
                const Vec3& z1, const Vec3& s);

double k1_rate(const Vec3& s, const AttitudeSmcParams& p);

/// Dual-layer adaptation step for (dL, r). Shared by the airspeed loop.
struct GainAdaptation {
  double dl = 0.0;
  double r = 0.0;
  double dl_rate = 0.0;   // commanded dL/dt
  double e = 0.0;         // adaptation error
};
GainAdaptation adapt_gain(double l0, double dl, double r, double u_eq_norm, double al, double eps,
                          double lambda0, double r_bar, double e_bar, double r_m, double l_floor,
                          RateLaw law, double dt);

/// Exact first-order filter update toward `input` with time constant tau.
template <typename T>
T first_order_filter(const T& state, const T& input, double tau, double dt) {
  const double decay = std::exp(-dt / tau);
  return input + (state - input) * decay;
}

/// Attitude sliding-mode law with its adaptive internal state.
class AttitudeSmc {
 public:
  explicit AttitudeSmc(AttitudeSmcParams params);

  const AttitudeSmcParams& params() const { return params_; }
  const AttitudeSmcState& state() const { return state_; }
  AttitudeSmcState& mutable_state() { return state_; }
  double l() const { return state_.l(params_); }

  Vec3 moment(const Mat3& inertia, const Mat3& r_theta, const Vec3& drift, const Vec3& s) const;
  /// Forward-Euler update of z1, k1, L, r and the equivalent-control filter.
  void advance(const Vec3& s, double dt);

 private:
  AttitudeSmcParams params_;
  AttitudeSmcState state_;
};

}  // namespace adpasmc
