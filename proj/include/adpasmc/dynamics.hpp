#pragma once

#include "adpasmc/disturbances.hpp"
#include "adpasmc/math.hpp"

#include <stdexcept>
#include <string>

namespace adpasmc {

/// Raised when a state reaches a configured singularity margin
/// (cos(theta) ~ 0, |alpha| or |beta| ~ pi/2, airspeed ~ 0).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row ordering of the Euler-rate matrix. `Rotated` orders the rows pitch, yaw,
/// roll; `Standard` is the usual roll-pitch-yaw kinematic matrix.
enum class EulerConvention { Rotated, Standard };
/// Sideslip definition. `Standard` is asin(v_lat / V), `AxialRatio` is asin(u / v_lat).
enum class BetaConvention { AxialRatio, Standard };
/// Aerodynamic force model.
///  None        : F = 0
///  Drag        : F = -D v/|v|
///  FlowAligned : drag plus a normal force that cancels every acceleration
///                component perpendicular to the velocity, so the flow direction
///                stays fixed in the body frame (trimmed-flight idealisation).
enum class AeroModel { None, Drag, FlowAligned };

struct UavParams {
  double mass = 1.56;
  double ixx = 0.5528;
  double iyy = 0.6335;
  double izz = 1.0783;
  double ixz = 0.0015;
  double gravity = 9.81;
  double drag_coeff = 0.02;
  EulerConvention euler_convention = EulerConvention::Rotated;
  BetaConvention beta_convention = BetaConvention::Standard;
  AeroModel aero_model = AeroModel::FlowAligned;
  double theta_margin = 0.05;
  double aero_angle_margin = 0.05;
  double min_airspeed = 0.1;

  Mat3 inertia() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Plant state. The same layout is used for its time derivative.
struct UavState {
  Vec3 position = Vec3::Zero();  // inertial, m
  Vec3 velocity = Vec3::Zero();  // body, m/s
  Vec3 euler = Vec3::Zero();     // (phi, theta, psi), rad
  Vec3 rates = Vec3::Zero();     // body angular velocity, rad/s
};

/// Control-oriented tracking errors.
struct ComState {
  Vec3 e_theta = Vec3::Zero();
  Vec3 z_theta = Vec3::Zero();  // time derivative of e_theta
  double e_v = 0.0;
};

struct AirspeedQuantities {
  double airspeed = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double g_v = 0.0;    // gravity projection used by the airspeed model
  double drag = 0.0;   // k_D V^2
  double cos_ab() const { return std::cos(alpha) * std::cos(beta); }
};

/// Euler-rate matrix: euler_dot = R_theta(euler) * rates.
Mat3 rotation_r_theta(const Vec3& euler, EulerConvention convention, double theta_margin = 0.05);
/// Time derivative of rotation_r_theta given the Euler-angle rates.
Mat3 r_theta_dot(const Vec3& euler, const Vec3& euler_dot, EulerConvention convention,
                 double theta_margin = 0.05);
/// Body-to-inertial rotation.
Mat3 rotation_r_i(const Vec3& euler);

AirspeedQuantities airspeed_quantities(const UavState& s, const UavParams& p);

/// Aerodynamic force F in body axes for the configured aero model.
Vec3 aerodynamic_force(const UavState& s, const UavParams& p, double thrust);

/// Rigid-body derivative with applied moment, thrust along body x, aerodynamic
/// force and disturbances. The airspeed disturbance acts along the velocity.
UavState plant_derivative(const UavState& s, const UavParams& p, const Vec3& moment,
                          double thrust, const Vec3& aero_force, const DisturbanceSample& dist);

/// Lumped attitude drift R_theta_dot*w - R_theta*I^-1 (w x I w), using the nominal
/// Euler rates R_theta*w.
Vec3 attitude_drift(const UavState& s, const UavParams& p);

}  // namespace adpasmc
