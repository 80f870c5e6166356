#include "adpasmc/selfcheck.hpp"

#include "adpasmc/adp.hpp"
#include "adpasmc/dynamics.hpp"
#include "adpasmc/math.hpp"
#include "adpasmc/smc_airspeed.hpp"
#include "adpasmc/smc_attitude.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace adpasmc {

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

CheckResult gradient_check(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  const double h = 1e-6;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec7 e;
    for (int i = 0; i < 7; ++i) e(i) = u(rng);
    const Mat35x7 g = grad_sigma_w(e);
    for (int j = 0; j < 7; ++j) {
      Vec7 ep = e, em = e;
      ep(j) += h;
      em(j) -= h;
      const Vec35 fd = (sigma_w(ep) - sigma_w(em)) / (2.0 * h);
      for (int i = 0; i < kBasisSize; ++i) worst = std::max(worst, rel_err(g(i, j), fd(i)));
    }
  }
  return {"basis gradient vs central differences", worst < 1e-6, worst, 1e-6};
}

CheckResult shaping_identity_check(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double s = u(rng);
    if (std::abs(s) < 1e-9) continue;
    const double d1 = 0.5 / std::sqrt(std::abs(s)) + 1.0;
    const double expected = d1 * phi_v1(s);
    worst = std::max(worst, rel_err(phi_v2(s), expected));
    worst = std::max(worst, rel_err(phi_v1_prime(s) * phi_v1(s), expected));
    const Vec3 sv(s, 0.0, 0.0);  // one active axis reduces the vector law to the scalar one
    worst = std::max(worst, rel_err(phi2(sv)(0), d1 * phi1(sv)(0)));
  }
  return {"shaping-function derivative identities", worst < 1e-10, worst, 1e-10};
}

CheckResult kron_spd_check(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 4;
    Eigen::MatrixXd b(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) b(i, j) = n(rng);
    const Eigen::MatrixXd a = b * b.transpose() + 0.1 * Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd k = kron(a, Eigen::MatrixXd::Identity(3, 3));
    worst = std::min(worst, min_eigenvalue_spd(k));
  }
  return {"Kronecker product with identity stays positive definite", worst > 0.0, worst, 0.0};
}

CheckResult rotation_check(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-M_PI, M_PI), pitch(-1.4, 1.4);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 e(ang(rng), pitch(rng), ang(rng));
    const Mat3 r = rotation_r_i(e);
    worst = std::max(worst, (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(r.determinant() - 1.0));
  }
  return {"body-to-inertial rotation orthogonal with unit determinant", worst < 1e-12, worst, 1e-12};
}

CheckResult rate_matrix_derivative_check(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ang(-M_PI, M_PI), pitch(-1.2, 1.2), rate(-1.0, 1.0);
  double worst = 0.0;
  const double h = 1e-6;
  for (auto conv : {EulerConvention::Rotated, EulerConvention::Standard}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Vec3 e(ang(rng), pitch(rng), ang(rng));
      const Vec3 ed(rate(rng), rate(rng), rate(rng));
      const Mat3 fd =
          (rotation_r_theta(e + h * ed, conv) - rotation_r_theta(e - h * ed, conv)) / (2.0 * h);
      const Mat3 an = r_theta_dot(e, ed, conv);
      worst = std::max(worst, (fd - an).cwiseAbs().maxCoeff() / std::max(1.0, an.norm()));
    }
  }
  return {"Euler-rate matrix derivative vs central differences", worst < 1e-6, worst, 1e-6};
}

}  // namespace

std::vector<CheckResult> run_property_checks(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;
  out.push_back(gradient_check(rng));
  out.push_back(shaping_identity_check(rng));
  out.push_back(kron_spd_check(rng));
  out.push_back(rotation_check(rng));
  out.push_back(rate_matrix_derivative_check(rng));
  return out;
}

}  // namespace adpasmc
