#ifndef GAUSSFID_SYMPLECTIC_HPP
#define GAUSSFID_SYMPLECTIC_HPP

#include <cstddef>
#include <string>

#include "linalg.hpp"
#include "tolerances.hpp"

namespace gaussfid {

/// The complex structure J = [[0, I], [-I, 0]] on R^{2n}, coordinates ordered
/// as (q_1..q_n, p_1..p_n).
struct SymplecticForm {
  std::size_t n = 0;
  Matrix J;
};

inline SymplecticForm standard_form(std::size_t n) {
  if (n == 0) {
    throw DimensionError("mode count must be positive");
  }
  const auto m = static_cast<Eigen::Index>(n);
  Matrix J = Matrix::Zero(2 * m, 2 * m);
  J.topRightCorner(m, m).setIdentity();
  J.bottomLeftCorner(m, m) = -Matrix::Identity(m, m);
  return {n, std::move(J)};
}

/// Mode count of a square phase-space matrix, or DimensionError.
inline std::size_t mode_count(const Matrix &m) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw DimensionError("expected a square matrix of positive even dimension, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return static_cast<std::size_t>(m.rows() / 2);
}

inline double symplectic_residual(const Matrix &S) {
  const Matrix J = standard_form(mode_count(S)).J;
  return linalg::max_abs(S.transpose() * J * S - J);
}

/// S^T J S = J up to tol.symplectic, scaled by max(1, max|S|^2) since the
/// residual grows quadratically with the squeezing carried by S.
inline bool is_symplectic(const Matrix &S, const Tolerances &tol = {}) {
  if (S.rows() != S.cols() || S.rows() == 0 || S.rows() % 2 != 0) {
    return false;
  }
  const double scale = std::max(1.0, linalg::max_abs(S) * linalg::max_abs(S));
  return symplectic_residual(S) <= tol.symplectic * scale;
}

inline void require_symplectic(const Matrix &S, const Tolerances &tol = {}) {
  if (!is_symplectic(S, tol)) {
    throw DomainError("matrix is not symplectic");
  }
}

} // namespace gaussfid

#endif // GAUSSFID_SYMPLECTIC_HPP
