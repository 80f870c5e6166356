#pragma once

#include "adpasmc/dynamics.hpp"
#include "adpasmc/math.hpp"

#include <cstdint>

namespace adpasmc {

inline constexpr int kBasisSize = 35;
using Vec35 = Eigen::Matrix<double, kBasisSize, 1>;
using Mat35 = Eigen::Matrix<double, kBasisSize, kBasisSize>;
using Mat35x7 = Eigen::Matrix<double, kBasisSize, 7>;

struct AdpParams {
  double beta_w = 0.5;                                  // quadratic part of the value
  Mat7 q_e = 1.5 * Mat7::Identity();                    // state cost
  Vec4 r_u = Vec4(1.2, 1.23, 1.0, 2.2);                 // diagonal input cost
  double c0 = 1.0;                                      // critic rate
  double a0 = 1.5;                                      // actor rate
  Mat35 gamma_a = 5.0 * Mat35::Identity();
  Vec35 gamma_b = Vec35::Constant(0.1);
  Vec7 psi_weights = Vec7::Ones();                      // Psi = 1/2 E' diag(w) E
  double weight_init_max = 2.0;                         // initial weights in (0, max]; 0 starts from zero

  /// Throws std::invalid_argument with an "adp.<key>" message.
  void validate() const;
};

/// Combined tracking error E = [e_theta; z_theta; e_v] with its control-affine
/// model E_dot = f + g U - x_d.
struct CombinedError {
  Vec7 e = Vec7::Zero();
  Vec7 f = Vec7::Zero();
  Mat74 g = Mat74::Zero();
  Vec7 x_d = Vec7::Zero();

  Vec7 e_dot(const Vec4& u) const { return f + g * u - x_d; }
};

CombinedError assemble_combined(const ComState& com, const Mat3& r_theta, const Mat3& inertia,
                                const AirspeedQuantities& air, double mass,
                                const Vec3& theta_dd_d, double v_dot_d);

/// Polynomial basis over E (35 monomials).
Vec35 sigma_w(const Vec7& e);
/// Jacobian d sigma / d E, 35 x 7.
Mat35x7 grad_sigma_w(const Vec7& e);

double value_hat(const Vec7& e, const Vec35& w_c, double beta_w);

/// Approximate optimal input -1/2 R^-1 g' (2 beta E + grad_sigma' W_a) = [M_a; T_xa].
Vec4 control_ua_hat(const CombinedError& ce, const Vec35& w_a, const AdpParams& p);

/// Bellman residual of the critic at input u.
double hjb_residual(const CombinedError& ce, const Vec35& w_c, const Vec4& u, const AdpParams& p);

double psi(const Vec7& e, const AdpParams& p);
Vec7 grad_psi(const Vec7& e, const AdpParams& p);
/// 0 when the Lyapunov candidate is strictly decreasing along E_dot, 1 otherwise.
int pi_indicator(const Vec7& grad_psi, const Vec7& e_dot);

/// Critic weight rate -c0 m/(1+m'm)^2 * residual, with m = grad_sigma * E_dot.
Vec35 critic_rate(const CombinedError& ce, const Vec35& w_c, const Vec4& u, const AdpParams& p);
Vec35 critic_update(const Vec35& w_c, const CombinedError& ce, const Vec4& u,
                    const AdpParams& p, double dt);

/// Actor weight rate. The input is evaluated from w_a itself.
Vec35 actor_rate(const CombinedError& ce, const Vec35& w_a, const Vec35& w_c, const AdpParams& p,
                 const Vec7& grad_psi);
Vec35 actor_update(const Vec35& w_a, const Vec35& w_c, const CombinedError& ce,
                   const AdpParams& p, const Vec7& grad_psi, double dt);

/// Critic/actor pair with forward-Euler weight updates.
class AdpController {
 public:
  AdpController(AdpParams params, std::uint64_t seed);

  const AdpParams& params() const { return params_; }
  const Vec35& critic_weights() const { return w_c_; }
  const Vec35& actor_weights() const { return w_a_; }
  void set_weights(const Vec35& w_c, const Vec35& w_a);

  Vec4 control(const CombinedError& ce) const { return control_ua_hat(ce, w_a_, params_); }
  /// Updates both weight vectors from values at the current sample.
  void advance(const CombinedError& ce, double dt);

  double last_residual() const { return last_residual_; }
  double last_critic_rate_norm() const { return last_critic_rate_norm_; }

 private:
  AdpParams params_;
  Vec35 w_c_;
  Vec35 w_a_;
  double last_residual_ = 0.0;
  double last_critic_rate_norm_ = 0.0;
};

}  // namespace adpasmc
