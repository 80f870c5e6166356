#include "adpasmc/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace adpasmc {

namespace {

void check_pitch(double theta, double margin) {
  if (std::abs(std::cos(theta)) <= std::sin(margin)) {
    throw SingularityError("pitch angle within margin of +-pi/2 (theta = " +
                           std::to_string(theta) + " rad)");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("uav.") + name + " must be positive and finite");
  }
}

}  // namespace

Mat3 UavParams::inertia() const {
  Mat3 j;
  j << ixx, 0.0, ixz,
       0.0, iyy, 0.0,
       ixz, 0.0, izz;
  return j;
}

void UavParams::validate() const {
  require_positive(mass, "mass");
  require_positive(ixx, "ixx");
  require_positive(iyy, "iyy");
  require_positive(izz, "izz");
  require_positive(gravity, "gravity");
  require_positive(theta_margin, "theta_margin");
  require_positive(aero_angle_margin, "aero_angle_margin");
  require_positive(min_airspeed, "min_airspeed");
  if (!(drag_coeff >= 0.0)) throw std::invalid_argument("uav.drag_coeff must be >= 0");
  if (!std::isfinite(ixz)) throw std::invalid_argument("uav.ixz must be finite");
  if (min_eigenvalue_spd(inertia()) <= 0.0) {
    throw std::invalid_argument("uav.ixx/iyy/izz/ixz: inertia matrix must be positive definite");
  }
}

Mat3 rotation_r_theta(const Vec3& euler, EulerConvention convention, double theta_margin) {
  const double phi = euler(0), theta = euler(1);
  check_pitch(theta, theta_margin);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double ct = std::cos(theta), tt = std::tan(theta);
  const Eigen::RowVector3d roll_row(1.0, sp * tt, cp * tt);
  const Eigen::RowVector3d pitch_row(0.0, cp, -sp);
  const Eigen::RowVector3d yaw_row(0.0, sp / ct, cp / ct);
  Mat3 r;
  if (convention == EulerConvention::Rotated) {
    r << pitch_row, yaw_row, roll_row;
  } else {
    r << roll_row, pitch_row, yaw_row;
  }
  return r;
}

Mat3 r_theta_dot(const Vec3& euler, const Vec3& euler_dot, EulerConvention convention,
                 double theta_margin) {
  const double phi = euler(0), theta = euler(1);
  check_pitch(theta, theta_margin);
  const double dphi = euler_dot(0), dtheta = euler_dot(1);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const double ct = std::cos(theta), st = std::sin(theta), tt = std::tan(theta);
  const double sec2 = 1.0 / (ct * ct);
  const Eigen::RowVector3d roll_row(0.0, cp * tt * dphi + sp * sec2 * dtheta,
                                    -sp * tt * dphi + cp * sec2 * dtheta);
  const Eigen::RowVector3d pitch_row(0.0, -sp * dphi, -cp * dphi);
  const Eigen::RowVector3d yaw_row(0.0, cp / ct * dphi + sp * st * sec2 * dtheta,
                                   -sp / ct * dphi + cp * st * sec2 * dtheta);
  Mat3 r;
  if (convention == EulerConvention::Rotated) {
    r << pitch_row, yaw_row, roll_row;
  } else {
    r << roll_row, pitch_row, yaw_row;
  }
  return r;
}

Mat3 rotation_r_i(const Vec3& euler) {
  const double cp = std::cos(euler(0)), sp = std::sin(euler(0));
  const double ct = std::cos(euler(1)), st = std::sin(euler(1));
  const double cs = std::cos(euler(2)), ss = std::sin(euler(2));
  Mat3 r;
  r << ct * cs, st * cs * sp - ss * cp, st * cs * cp + ss * sp,
       ct * ss, st * ss * sp + cs * cp, st * ss * cp - cs * sp,
       -st,     ct * sp,                ct * cp;
  return r;
}

AirspeedQuantities airspeed_quantities(const UavState& s, const UavParams& p) {
  const double u = s.velocity(0), v = s.velocity(1), w = s.velocity(2);
  AirspeedQuantities q;
  q.airspeed = s.velocity.norm();
  if (!(q.airspeed >= p.min_airspeed)) {
    throw SingularityError("airspeed below minimum (V = " + std::to_string(q.airspeed) + " m/s)");
  }
  if (std::abs(u) <= kSignZeroTol) throw SingularityError("forward velocity u is zero");
  q.alpha = std::atan(w / u);
  if (p.beta_convention == BetaConvention::Standard) {
    q.beta = std::asin(std::clamp(v / q.airspeed, -1.0, 1.0));
  } else {
    if (std::abs(v) <= kSignZeroTol || std::abs(u / v) > 1.0) {
      throw SingularityError("sideslip asin(u/v) undefined for |u/v| > 1");
    }
    q.beta = std::asin(u / v);
  }
  const double limit = M_PI / 2.0 - p.aero_angle_margin;
  if (std::abs(q.alpha) >= limit || std::abs(q.beta) >= limit) {
    throw SingularityError("aerodynamic angle within margin of +-pi/2 (alpha = " +
                           std::to_string(q.alpha) + ", beta = " + std::to_string(q.beta) + ")");
  }
  const double phi = s.euler(0), theta = s.euler(1);
  const double ca = std::cos(q.alpha), sa = std::sin(q.alpha);
  const double cb = std::cos(q.beta), sb = std::sin(q.beta);
  q.g_v = p.gravity * (-ca * cb * std::sin(theta) + sb * std::sin(phi) * std::cos(theta) +
                       sa * cb * std::cos(phi) * std::cos(theta));
  q.drag = p.drag_coeff * q.airspeed * q.airspeed;
  return q;
}

Vec3 aerodynamic_force(const UavState& s, const UavParams& p, double thrust) {
  if (p.aero_model == AeroModel::None) return Vec3::Zero();
  const double speed = s.velocity.norm();
  if (speed <= kSignZeroTol) return Vec3::Zero();
  const Vec3 dir = s.velocity / speed;
  Vec3 f = -p.drag_coeff * speed * speed * dir;
  if (p.aero_model == AeroModel::FlowAligned) {
    const Vec3 gravity_body = rotation_r_i(s.euler) * Vec3(0.0, 0.0, p.gravity);
    const Vec3 accel = Vec3(thrust / p.mass, 0.0, 0.0) + gravity_body - s.rates.cross(s.velocity);
    f -= p.mass * (accel - dir * dir.dot(accel));
  }
  return f;
}

UavState plant_derivative(const UavState& s, const UavParams& p, const Vec3& moment,
                          double thrust, const Vec3& aero_force, const DisturbanceSample& dist) {
  const Mat3 r_i = rotation_r_i(s.euler);
  const Mat3 inertia = p.inertia();
  UavState d;
  d.position = r_i * s.velocity;
  d.velocity = (aero_force + Vec3(thrust, 0.0, 0.0)) / p.mass +
               r_i * Vec3(0.0, 0.0, p.gravity) - s.rates.cross(s.velocity);
  const double speed = s.velocity.norm();
  if (speed > kSignZeroTol) d.velocity += dist.d_v * s.velocity / speed;
  d.euler = rotation_r_theta(s.euler, p.euler_convention, p.theta_margin) * s.rates + dist.d_u;
  d.rates = inertia.ldlt().solve(-s.rates.cross(inertia * s.rates) + moment + dist.d_m);
  return d;
}

Vec3 attitude_drift(const UavState& s, const UavParams& p) {
  const Mat3 r_theta = rotation_r_theta(s.euler, p.euler_convention, p.theta_margin);
  const Vec3 nominal_rate = r_theta * s.rates;
  const Mat3 r_dot = r_theta_dot(s.euler, nominal_rate, p.euler_convention, p.theta_margin);
  const Mat3 inertia = p.inertia();
  return r_dot * s.rates - r_theta * inertia.ldlt().solve(s.rates.cross(inertia * s.rates));
}

}  // namespace adpasmc
