#pragma once

#include "adpasmc/dynamics.hpp"
#include "adpasmc/smc_airspeed.hpp"
#include "adpasmc/smc_attitude.hpp"

#include <limits>
#include <memory>
#include <string>

namespace adpasmc {

/// Sample handed to an airspeed law. `agst_surface` and `ftsm_integral` are
/// the integral states carried with the plant.
struct AirspeedContext {
  double t = 0.0;
  double mass = 1.0;
  AirspeedQuantities air;
  double e_v = 0.0;
  double v_dot_d = 0.0;
  double adp_thrust = 0.0;     // learned part T_xa
  double agst_surface = 0.0;   // S_V
  double ftsm_integral = 0.0;
};

/// Sample handed to an attitude law.
struct AttitudeContext {
  double t = 0.0;
  Mat3 inertia = Mat3::Identity();
  Mat3 r_theta = Mat3::Identity();
  Vec3 drift = Vec3::Zero();
  Vec3 surface = Vec3::Zero();   // S
  Vec3 adp_moment = Vec3::Zero();
};

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

struct AirspeedGains {
  double lv = kNotApplicable;
  double rv = kNotApplicable;
  double e_v_bar = kNotApplicable;
};

struct AttitudeGains {
  double k1 = kNotApplicable;
  double l = kNotApplicable;
  double r = kNotApplicable;
  double e_delta = kNotApplicable;
};

class AirspeedLaw {
 public:
  virtual ~AirspeedLaw() = default;
  virtual std::string name() const = 0;
  /// Total thrust for the sample; does not change internal state.
  virtual double thrust(const AirspeedContext& ctx) const = 0;
  /// The part of the thrust produced by the sliding/robust term.
  virtual double robust_thrust(const AirspeedContext& ctx) const = 0;
  /// Sliding variable monitored by the law.
  virtual double surface(const AirspeedContext& ctx) const = 0;
  virtual void advance(const AirspeedContext& ctx, double dt) = 0;
  virtual AirspeedGains gains() const { return {}; }
};

class AttitudeLaw {
 public:
  virtual ~AttitudeLaw() = default;
  virtual std::string name() const = 0;
  virtual Vec3 moment(const AttitudeContext& ctx) const = 0;
  virtual Vec3 robust_moment(const AttitudeContext& ctx) const = 0;
  virtual void advance(const AttitudeContext& ctx, double dt) = 0;
  virtual AttitudeGains gains() const { return {}; }
};

/// Adaptive generalized super-twisting on the integral surface plus the learned thrust.
class AgstAirspeedLaw final : public AirspeedLaw {
 public:
  explicit AgstAirspeedLaw(AirspeedSmcParams params) : smc_(params) {}
  std::string name() const override { return "adp_asmc"; }
  double thrust(const AirspeedContext& ctx) const override {
    return robust_thrust(ctx) + ctx.adp_thrust;
  }
  double robust_thrust(const AirspeedContext& ctx) const override {
    return smc_.thrust(ctx.mass, ctx.air.alpha, ctx.air.beta, ctx.agst_surface);
  }
  double surface(const AirspeedContext& ctx) const override { return ctx.agst_surface; }
  void advance(const AirspeedContext& ctx, double dt) override { smc_.advance(ctx.agst_surface, dt); }
  AirspeedGains gains() const override {
    return {smc_.lv(), smc_.state().rv, smc_.state().e_v_bar};
  }
  const AirspeedSmc& smc() const { return smc_; }

 private:
  AirspeedSmc smc_;
};

/// Adaptive sliding moment on the integral surface plus the learned moment.
class AsmcAttitudeLaw final : public AttitudeLaw {
 public:
  explicit AsmcAttitudeLaw(AttitudeSmcParams params) : smc_(params) {}
  std::string name() const override { return "adp_asmc"; }
  Vec3 moment(const AttitudeContext& ctx) const override {
    return robust_moment(ctx) + ctx.adp_moment;
  }
  Vec3 robust_moment(const AttitudeContext& ctx) const override {
    return smc_.moment(ctx.inertia, ctx.r_theta, ctx.drift, ctx.surface);
  }
  void advance(const AttitudeContext& ctx, double dt) override { smc_.advance(ctx.surface, dt); }
  AttitudeGains gains() const override {
    return {smc_.state().k1, smc_.l(), smc_.state().r, smc_.state().e_delta};
  }
  const AttitudeSmc& smc() const { return smc_; }

 private:
  AttitudeSmc smc_;
};

struct FtsmGstParams {
  double k_s = 1.5;
  double gamma_f1 = 1.2;
  double gamma_f2 = 0.88;
  double k1f = 4.0;
  double k2f = 1.5;

  void validate() const;
};

/// |e|^g1 sign(e) + |e|^g2 sign(e)
double ftsm_integrand(double e_v, const FtsmGstParams& p);
/// S = e_V + k_s * integral
double ftsm_surface(double e_v, double integral, const FtsmGstParams& p);
/// Model-based thrust with fast terminal surface and generalized super-twisting.
double ftsm_gst_thrust(double mass, const AirspeedQuantities& air, double v_dot_d, double e_v,
                       double surface, double z_f, const FtsmGstParams& p);

class FtsmGstAirspeedLaw final : public AirspeedLaw {
 public:
  explicit FtsmGstAirspeedLaw(FtsmGstParams params);
  std::string name() const override { return "ftsm_gst"; }
  double thrust(const AirspeedContext& ctx) const override;
  double robust_thrust(const AirspeedContext& ctx) const override { return thrust(ctx); }
  double surface(const AirspeedContext& ctx) const override {
    return ftsm_surface(ctx.e_v, ctx.ftsm_integral, params_);
  }
  void advance(const AirspeedContext& ctx, double dt) override;
  double z_f() const { return z_f_; }

 private:
  FtsmGstParams params_;
  double z_f_ = 0.0;
};

}  // namespace adpasmc
