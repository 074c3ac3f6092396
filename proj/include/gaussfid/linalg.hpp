#ifndef GAUSSFID_LINALG_HPP
#define GAUSSFID_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "errors.hpp"

namespace gaussfid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

namespace linalg {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix symmetrized(const Matrix &m) { return 0.5 * (m + m.transpose()); }

/// log det of a symmetric positive-definite matrix via Cholesky. Throws
/// DefinitenessError when the factorization breaks down.
inline double log_det_spd(const Matrix &m) {
  Eigen::LLT<Matrix> llt(symmetrized(m));
  if (llt.info() != Eigen::Success) {
    throw DefinitenessError("matrix is not positive definite");
  }
  const Matrix &factor = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < factor.rows(); ++i) {
    acc += std::log(factor(i, i));
  }
  return 2.0 * acc;
}

/// Principal-branch log det of a complex matrix whose eigenvalues all lie in
/// the open right half plane (e.g. complex symmetric with positive-definite
/// real part). Summing per-eigenvalue principal logs keeps the analytic branch
/// that Gaussian integrals produce.
inline Complex log_det_accretive(const ComplexMatrix &m) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  if (es.info() != Eigen::Success) {
    throw NumericalConsistencyError("eigenvalue computation failed");
  }
  Complex acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    acc += std::log(es.eigenvalues()(i));
  }
  return acc;
}

/// Principal square root of a symmetric positive semi-definite matrix.
inline Matrix sqrt_psd(const Matrix &m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
  const Vector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return symmetrized(es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose());
}

/// Block-diagonal direct sum diag(v) (+) diag(v), the matrix D of a Williamson
/// normal form in q...q p...p ordering.
inline Matrix doubled_diagonal(const Vector &v) {
  const auto n = v.size();
  Vector full(2 * n);
  full << v, v;
  return full.asDiagonal();
}

} // namespace linalg
} // namespace gaussfid

#endif // GAUSSFID_LINALG_HPP
