#include "adpasmc/controllers.hpp"

#include <cmath>

namespace adpasmc {

void FtsmGstParams::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("ftsm_gst.") + key + " must be > 0");
    }
  };
  positive(k_s, "k_s");
  positive(gamma_f1, "gamma_f1");
  positive(gamma_f2, "gamma_f2");
  positive(k1f, "k1f");
  positive(k2f, "k2f");
  if (!(gamma_f1 > 1.0)) throw std::invalid_argument("ftsm_gst.gamma_f1: γ₁ > 1 required");
  if (!(gamma_f2 < 1.0)) throw std::invalid_argument("ftsm_gst.gamma_f2: γ₂ ∈ (0,1) required");
}

double ftsm_integrand(double e_v, const FtsmGstParams& p) {
  return pow_sign(e_v, p.gamma_f1) + pow_sign(e_v, p.gamma_f2);
}

double ftsm_surface(double e_v, double integral, const FtsmGstParams& p) {
  return e_v + p.k_s * integral;
}

double ftsm_gst_thrust(double mass, const AirspeedQuantities& air, double v_dot_d, double e_v,
                       double surface, double z_f, const FtsmGstParams& p) {
  const double accel = air.drag / mass + air.g_v + v_dot_d - p.k_s * ftsm_integrand(e_v, p) -
                       p.k1f * phi_v1(surface) + z_f;
  return mass / air.cos_ab() * accel;
}

FtsmGstAirspeedLaw::FtsmGstAirspeedLaw(FtsmGstParams params) : params_(params) {
  params_.validate();
}

double FtsmGstAirspeedLaw::thrust(const AirspeedContext& ctx) const {
  return ftsm_gst_thrust(ctx.mass, ctx.air, ctx.v_dot_d, ctx.e_v, surface(ctx), z_f_, params_);
}

void FtsmGstAirspeedLaw::advance(const AirspeedContext& ctx, double dt) {
  z_f_ += -params_.k2f * phi_v2(surface(ctx)) * dt;
}

}  // namespace adpasmc
