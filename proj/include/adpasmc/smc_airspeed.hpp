#pragma once

#include "adpasmc/smc_attitude.hpp"

#include <functional>
#include <vector>

namespace adpasmc {

struct AirspeedSmcParams {
  double k1v = 5.0;
  double k2v = 3.0;
  double lv0 = 0.55;
  double lv = 0.99;        // filter ratio, in (0,1)
  double eps_v = 0.05;
  double lambda_v0 = 0.01;
  double r_bar_v = 5.0;
  double e_b = 0.3;        // in (0,1)
  double r_mv = 0.5;
  double tau_f = 0.01;
  double l_floor = 0.01;
  double s_deadzone = 1e-6;
  RateLaw r_law = RateLaw::Rate;

  /// Gains of the scalar benchmark.
  static AirspeedSmcParams siso_demo();
  /// Throws std::invalid_argument with a "<section>.<key>" message.
  void validate(const char* section = "smc_airspeed") const;
};

struct AirspeedSmcState {
  double zv = 0.0;
  double dlv = 0.0;          // Lv = lv0 + dlv
  double rv = 0.5;
  double u_eqv_bar = 0.0;
  double ism_integral = 0.0;
  double lv_dot_last = 0.0;  // last applied dLv/dt
  double e_v_bar = 0.0;      // last adaptation error, diagnostic

  static AirspeedSmcState initial(const AirspeedSmcParams& p);
  double lv(const AirspeedSmcParams& p) const { return p.lv0 + dlv; }
};

/// phi_v1 = |S|^(1/2) sign(S) + S
double phi_v1(double s);
/// d(phi_v1)/dS = 1/2 |S|^(-1/2) + 1, S != 0
double phi_v1_prime(double s);
/// phi_v2 = 1/2 sign(S) + 3/2 |S|^(1/2) sign(S) + S
double phi_v2(double s);
/// Gain-rate compensation -Lv_dot phi_v1 / (2 Lv phi_v1'). Zero inside the
/// dead-zone |S| < deadzone or when Lv_dot = 0.
double phi_v3(double lv, double lv_dot, double s, double deadzone);

/// Sliding thrust m/(cos a cos b) (-k1v sqrt(Lv/2) phi_v1 + zv + phi_v3).
double control_txs(double mass, double alpha, double beta, double lv, double zv, double phi3,
                   double s, double k1v);

/// Airspeed sliding-mode law with its adaptive internal state.
class AirspeedSmc {
 public:
  explicit AirspeedSmc(AirspeedSmcParams params, const char* section = "smc_airspeed");

  const AirspeedSmcParams& params() const { return params_; }
  const AirspeedSmcState& state() const { return state_; }
  AirspeedSmcState& mutable_state() { return state_; }
  double lv() const { return state_.lv(params_); }

  /// Normalised acceleration command -k1v sqrt(Lv/2) phi_v1 + zv + phi_v3.
  double acceleration(double s) const;
  double thrust(double mass, double alpha, double beta, double s) const;
  void advance(double s, double dt);

 private:
  AirspeedSmcParams params_;
  AirspeedSmcState state_;
};

/// One sample of the scalar benchmark x_dot = u + d(t).
struct SisoRecord {
  double t, x, u, d, lv, rv, e_v_bar, phi_v3, zv;
};

struct SisoDemoOptions {
  double duration = 30.0;
  double dt = 1e-3;
  double x0 = 1.0;
  std::function<double(double)> disturbance;  // empty: the benchmark d(t)
};

/// Forward-Euler run of the scalar benchmark with S = x.
std::vector<SisoRecord> run_siso_demo(const AirspeedSmcParams& params,
                                      const SisoDemoOptions& options = {});

}  // namespace adpasmc
