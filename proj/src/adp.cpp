#include "adpasmc/adp.hpp"

#include <array>
#include <random>
#include <string>

namespace adpasmc {

namespace {

// Exponents over (e1, e2, e3, z1, z2, z3, eV) for each basis monomial.
using Exponents = std::array<int, 7>;
constexpr std::array<Exponents, kBasisSize> kMonomials{{
    {2, 0, 0, 0, 0, 0, 0},  // e1^2
    {1, 1, 0, 0, 0, 0, 0},  // e1 e2
    {0, 2, 0, 0, 0, 0, 0},  // e2^2
    {1, 0, 1, 0, 0, 0, 0},  // e1 e3
    {0, 0, 2, 0, 0, 0, 0},  // e3^2
    {0, 1, 1, 0, 0, 0, 0},  // e2 e3
    {0, 0, 0, 2, 0, 0, 0},  // z1^2
    {0, 0, 0, 1, 1, 0, 0},  // z1 z2
    {0, 0, 0, 0, 2, 0, 0},  // z2^2
    {0, 0, 0, 1, 0, 1, 0},  // z1 z3
    {0, 0, 0, 0, 0, 2, 0},  // z3^2
    {0, 0, 0, 0, 1, 1, 0},  // z2 z3
    {3, 0, 0, 1, 0, 0, 0},  // e1^3 z1
    {0, 3, 0, 0, 1, 0, 0},  // e2^3 z2
    {0, 0, 3, 0, 0, 1, 0},  // e3^3 z3
    {1, 0, 0, 1, 1, 0, 0},  // e1 z1 z2
    {0, 1, 0, 0, 1, 1, 0},  // e2 z2 z3
    {0, 0, 1, 1, 0, 1, 0},  // e3 z3 z1
    {1, 0, 0, 0, 1, 0, 0},  // e1 z2
    {1, 0, 0, 0, 0, 1, 0},  // e1 z3
    {0, 1, 0, 1, 0, 0, 0},  // e2 z1
    {0, 1, 0, 0, 0, 1, 0},  // e2 z3
    {0, 0, 1, 1, 0, 0, 0},  // e3 z1
    {0, 0, 1, 0, 1, 0, 0},  // e3 z2
    {0, 1, 1, 3, 0, 0, 0},  // z1^3 e3 e2
    {1, 0, 1, 0, 3, 0, 0},  // z2^3 e1 e3
    {1, 1, 0, 0, 0, 3, 0},  // z3^3 e1 e2
    {1, 0, 0, 3, 0, 0, 0},  // e1 z1^3
    {0, 1, 0, 0, 3, 0, 0},  // e2 z2^3
    {0, 0, 1, 0, 0, 3, 0},  // e3 z3^3
    {0, 0, 0, 0, 0, 0, 2},  // eV^2
    {1, 0, 0, 0, 0, 0, 1},  // eV e1
    {0, 1, 0, 0, 0, 0, 1},  // eV e2
    {3, 0, 0, 0, 0, 0, 1},  // eV e1^3
    {0, 3, 0, 0, 0, 0, 1},  // eV e2^3
}};

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

Vec4 r_inv(const AdpParams& p) { return p.r_u.cwiseInverse(); }

}  // namespace

void AdpParams::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("adp.") + key + " must be > 0");
    }
  };
  positive(beta_w, "beta_w");
  positive(c0, "c0");
  positive(a0, "a0");
  if (!(weight_init_max >= 0.0) || !std::isfinite(weight_init_max)) {
    throw std::invalid_argument("adp.weight_init_max must be >= 0");
  }
  for (int i = 0; i < 4; ++i) positive(r_u(i), "r_u");
  for (int i = 0; i < 7; ++i) positive(psi_weights(i), "psi_weights");
  if (!q_e.isApprox(q_e.transpose()) || min_eigenvalue_spd(q_e) <= 0.0) {
    throw std::invalid_argument("adp.q_e must be symmetric positive definite");
  }
  if (!gamma_a.isApprox(gamma_a.transpose()) || min_eigenvalue_spd(gamma_a) <= 0.0) {
    throw std::invalid_argument("adp.gamma_a must be symmetric positive definite");
  }
  if (!gamma_b.allFinite()) throw std::invalid_argument("adp.gamma_b must be finite");
}

CombinedError assemble_combined(const ComState& com, const Mat3& r_theta, const Mat3& inertia,
                                const AirspeedQuantities& air, double mass,
                                const Vec3& theta_dd_d, double v_dot_d) {
  CombinedError ce;
  ce.e << com.e_theta, com.z_theta, com.e_v;
  ce.f.segment<3>(0) = com.z_theta;
  ce.f(6) = -air.drag / mass - air.g_v;
  ce.g.block<3, 3>(3, 0) = r_theta * inertia.inverse();
  ce.g(6, 3) = air.cos_ab() / mass;
  ce.x_d.segment<3>(3) = theta_dd_d;
  ce.x_d(6) = v_dot_d;
  return ce;
}

Vec35 sigma_w(const Vec7& e) {
  Vec35 s;
  for (int j = 0; j < kBasisSize; ++j) {
    double v = 1.0;
    for (int k = 0; k < 7; ++k) v *= ipow(e(k), kMonomials[j][k]);
    s(j) = v;
  }
  return s;
}

Mat35x7 grad_sigma_w(const Vec7& e) {
  Mat35x7 g = Mat35x7::Zero();
  for (int j = 0; j < kBasisSize; ++j) {
    for (int d = 0; d < 7; ++d) {
      const int n = kMonomials[j][d];
      if (n == 0) continue;
      double v = n * ipow(e(d), n - 1);
      for (int k = 0; k < 7; ++k) {
        if (k != d) v *= ipow(e(k), kMonomials[j][k]);
      }
      g(j, d) = v;
    }
  }
  return g;
}

double value_hat(const Vec7& e, const Vec35& w_c, double beta_w) {
  return beta_w * e.squaredNorm() + w_c.dot(sigma_w(e));
}

Vec4 control_ua_hat(const CombinedError& ce, const Vec35& w_a, const AdpParams& p) {
  const Vec7 costate = 2.0 * p.beta_w * ce.e + grad_sigma_w(ce.e).transpose() * w_a;
  return -0.5 * r_inv(p).asDiagonal() * (ce.g.transpose() * costate);
}

double hjb_residual(const CombinedError& ce, const Vec35& w_c, const Vec4& u, const AdpParams& p) {
  const Vec7 costate = 2.0 * p.beta_w * ce.e + grad_sigma_w(ce.e).transpose() * w_c;
  return costate.dot(ce.e_dot(u)) + ce.e.dot(p.q_e * ce.e) + u.dot(p.r_u.asDiagonal() * u);
}

double psi(const Vec7& e, const AdpParams& p) {
  return 0.5 * e.dot(p.psi_weights.asDiagonal() * e);
}

Vec7 grad_psi(const Vec7& e, const AdpParams& p) { return p.psi_weights.cwiseProduct(e); }

int pi_indicator(const Vec7& grad_psi, const Vec7& e_dot) {
  return grad_psi.dot(e_dot) < 0.0 ? 0 : 1;
}

Vec35 critic_rate(const CombinedError& ce, const Vec35& w_c, const Vec4& u, const AdpParams& p) {
  const Vec35 m = grad_sigma_w(ce.e) * ce.e_dot(u);
  const double n = 1.0 + m.squaredNorm();
  return -p.c0 * m / (n * n) * hjb_residual(ce, w_c, u, p);
}

Vec35 critic_update(const Vec35& w_c, const CombinedError& ce, const Vec4& u,
                    const AdpParams& p, double dt) {
  return w_c + dt * critic_rate(ce, w_c, u, p);
}

Vec35 actor_rate(const CombinedError& ce, const Vec35& w_a, const Vec35& w_c, const AdpParams& p,
                 const Vec7& grad_psi_e) {
  const Mat35x7 jac = grad_sigma_w(ce.e);
  const Vec4 u = control_ua_hat(ce, w_a, p);
  const Vec7 e_dot = ce.e_dot(u);
  const Vec35 m = jac * e_dot;
  const double n = 1.0 + m.squaredNorm();
  const Vec35 m_bar = m / (n * n);
  const Vec35 m_one = m / n;
  const Mat7 a = ce.g * r_inv(p).asDiagonal() * ce.g.transpose();
  // Grouping: (grad_sigma A grad_sigma') W_a scaled by the scalar m_bar' W_c, and
  // gamma_b scaled by the scalar m_one' W_c.
  const Vec35 shaping = jac * (a * (jac.transpose() * w_a));
  const Vec35 tracking = p.gamma_a * w_a - p.gamma_b * m_one.dot(w_c);
  Vec35 rate = -p.a0 * (tracking - 0.25 * shaping * m_bar.dot(w_c));
  if (pi_indicator(grad_psi_e, e_dot) == 1) rate += 0.5 * p.a0 * (jac * (a * grad_psi_e));
  return rate;
}

Vec35 actor_update(const Vec35& w_a, const Vec35& w_c, const CombinedError& ce,
                   const AdpParams& p, const Vec7& grad_psi_e, double dt) {
  return w_a + dt * actor_rate(ce, w_a, w_c, p, grad_psi_e);
}

AdpController::AdpController(AdpParams params, std::uint64_t seed) : params_(std::move(params)) {
  params_.validate();
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return params_.weight_init_max * (1.0 - unit);                     // (0, max]
  };
  for (int i = 0; i < kBasisSize; ++i) w_c_(i) = draw();
  for (int i = 0; i < kBasisSize; ++i) w_a_(i) = draw();
}

void AdpController::set_weights(const Vec35& w_c, const Vec35& w_a) {
  w_c_ = w_c;
  w_a_ = w_a;
}

void AdpController::advance(const CombinedError& ce, double dt) {
  const Vec4 u = control(ce);
  const Vec35 c_rate = critic_rate(ce, w_c_, u, params_);
  const Vec35 a_rate = actor_rate(ce, w_a_, w_c_, params_, grad_psi(ce.e, params_));
  last_residual_ = hjb_residual(ce, w_c_, u, params_);
  last_critic_rate_norm_ = c_rate.norm();
  w_c_ += dt * c_rate;
  w_a_ += dt * a_rate;
}

}  // namespace adpasmc
