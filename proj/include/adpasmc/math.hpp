#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace adpasmc {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;
using Mat74 = Eigen::Matrix<double, 7, 4>;

/// Below this norm a vector is treated as zero by the sign operators.
inline constexpr double kSignZeroTol = 1e-12;

inline double sign(double x) {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return -1.0;
  return 0.0;
}

/// Unit-vector sign x/||x||, the zero vector when ||x|| <= kSignZeroTol.
template <typename Derived>
typename Derived::PlainObject msign(const Eigen::MatrixBase<Derived>& x) {
  const double n = x.norm();
  if (n <= kSignZeroTol) return Derived::PlainObject::Zero(x.rows(), x.cols());
  return x / n;
}

/// Scalar version: |x|^rho * sign(x). rho = 0 gives sign(x).
inline double pow_sign(double x, double rho) {
  if (rho < 0.0) throw std::invalid_argument("pow_sign: exponent must be >= 0");
  if (std::abs(x) <= kSignZeroTol) return 0.0;
  return std::pow(std::abs(x), rho) * sign(x);
}

/// Vector version: ||x||^rho * x/||x||.
template <typename Derived>
typename Derived::PlainObject pow_sign(const Eigen::MatrixBase<Derived>& x, double rho) {
  if (rho < 0.0) throw std::invalid_argument("pow_sign: exponent must be >= 0");
  const double n = x.norm();
  if (n <= kSignZeroTol) return Derived::PlainObject::Zero(x.rows(), x.cols());
  return (std::pow(n, rho) / n) * x;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi sweeps).
/// Throws std::invalid_argument for non-square or non-symmetric input.
double min_eigenvalue_spd(const Eigen::MatrixXd& a);

inline double deg2rad(double deg) { return deg * M_PI / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / M_PI; }

}  // namespace adpasmc
