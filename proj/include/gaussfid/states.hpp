#ifndef GAUSSFID_STATES_HPP
#define GAUSSFID_STATES_HPP

#include <cmath>
#include <vector>

#include "correlation.hpp"

namespace gaussfid {

/// Product of thermal modes with mean photon numbers nbar:
/// A = diag(2 nbar + 1) (+) diag(2 nbar + 1).
inline CorrelationMatrix thermal_state(const std::vector<double> &nbar, const Tolerances &tol = {}) {
  if (nbar.empty()) {
    throw DimensionError("at least one mode is required");
  }
  Vector d(static_cast<Eigen::Index>(nbar.size()));
  for (std::size_t j = 0; j < nbar.size(); ++j) {
    if (!(nbar[j] >= 0.0) || !std::isfinite(nbar[j])) {
      throw DomainError("mean photon numbers must be finite and non-negative");
    }
    d(static_cast<Eigen::Index>(j)) = 2.0 * nbar[j] + 1.0;
  }
  return validate(linalg::doubled_diagonal(d), tol);
}

/// Product of squeezed thermal modes. Mode j has the 2x2 block
/// R(theta)^T diag((2 nbar + 1) e^{2r}, (2 nbar + 1) e^{-2r}) R(theta),
/// where R(theta) rotates phase space by theta (radians).
inline CorrelationMatrix squeezed_thermal_state(const std::vector<double> &nbar,
                                                const std::vector<double> &r,
                                                const std::vector<double> &theta,
                                                const Tolerances &tol = {}) {
  if (nbar.size() != r.size() || nbar.size() != theta.size()) {
    throw DomainError("nbar, r and theta must have the same length");
  }
  if (nbar.empty()) {
    throw DimensionError("at least one mode is required");
  }
  const auto n = static_cast<Eigen::Index>(nbar.size());
  Matrix A = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (!(nbar[k] >= 0.0) || !std::isfinite(nbar[k]) || !std::isfinite(r[k]) ||
        !std::isfinite(theta[k])) {
      throw DomainError("invalid squeezed thermal parameters");
    }
    const double d = 2.0 * nbar[k] + 1.0;
    const double c = std::cos(theta[k]);
    const double s = std::sin(theta[k]);
    Eigen::Matrix2d rot;
    rot << c, s, -s, c;
    const Eigen::Matrix2d diag = Eigen::Vector2d(d * std::exp(2.0 * r[k]), d * std::exp(-2.0 * r[k])).asDiagonal();
    const Eigen::Matrix2d block = rot.transpose() * diag * rot;
    A(j, j) = block(0, 0);
    A(j, n + j) = block(0, 1);
    A(n + j, j) = block(1, 0);
    A(n + j, n + j) = block(1, 1);
  }
  return validate(A, tol);
}

} // namespace gaussfid

#endif // GAUSSFID_STATES_HPP
