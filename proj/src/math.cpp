#include "adpasmc/math.hpp"

#include <algorithm>

namespace adpasmc {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double min_eigenvalue_spd(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw std::invalid_argument("min_eigenvalue_spd: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("min_eigenvalue_spd: matrix is not symmetric");
  }

  Eigen::MatrixXd m = 0.5 * (a + a.transpose());
  const Eigen::Index n = m.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off <= 1e-30 * scale * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (std::abs(apq) < 1e-300) continue;
        // rotation angle zeroing m(p,q)
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = sign(theta == 0.0 ? 1.0 : theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  return m.diagonal().minCoeff();
}

}  // namespace adpasmc
