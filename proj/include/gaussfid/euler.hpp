#ifndef GAUSSFID_EULER_HPP
#define GAUSSFID_EULER_HPP

#include <vector>

#include "correlation.hpp"

namespace gaussfid {

/// S = O (diag(m) (+) diag(m)^{-1}) O' with O, O' orthogonal and symplectic,
/// m sorted descending and m_j >= 1.
struct EulerDecomposition {
  Matrix O;
  Vector m;
  Matrix O_prime;

  Matrix squeeze() const {
    const auto n = m.size();
    Vector full(2 * n);
    full << m, m.cwiseInverse();
    return full.asDiagonal();
  }
  Matrix reconstruct() const { return O * squeeze() * O_prime; }
};

/// Polar decomposition S = P Q with P = (S S^T)^{1/2} symmetric symplectic and
/// Q orthogonal symplectic, followed by an orthogonal symplectic
/// diagonalization of P. P v = m v implies P (J v) = (J v) / m, so choosing n
/// eigenvectors v_j with m_j >= 1 and completing with -J v_j gives O.
inline EulerDecomposition euler_decompose(const Matrix &S, const Tolerances &tol = {}) {
  const auto n = static_cast<Eigen::Index>(mode_count(S));
  require_symplectic(S, tol);
  const Matrix J = standard_form(static_cast<std::size_t>(n)).J;

  Eigen::JacobiSVD<Matrix> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix &U = svd.matrixU();
  const Matrix P = linalg::symmetrized(U * svd.singularValues().asDiagonal() * U.transpose());
  const Matrix Q = U * svd.matrixV().transpose();

  Eigen::SelfAdjointEigenSolver<Matrix> es(P);
  std::vector<Vector> chosen;
  for (Eigen::Index i = 2 * n - 1; i >= 0 && static_cast<Eigen::Index>(chosen.size()) < n; --i) {
    Vector w = es.eigenvectors().col(i);
    for (const Vector &v : chosen) {
      const Vector jv = J * v;
      w -= v * v.dot(w);
      w -= jv * jv.dot(w);
    }
    const double norm = w.norm();
    if (norm > 0.5) {
      chosen.push_back(w / norm);
    }
  }
  if (static_cast<Eigen::Index>(chosen.size()) != n) {
    throw DecompositionError("could not assemble an orthogonal symplectic eigenbasis");
  }

  EulerDecomposition out;
  out.O.resize(2 * n, 2 * n);
  out.m.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.O.col(j) = chosen[static_cast<std::size_t>(j)];
    out.O.col(n + j) = -J * chosen[static_cast<std::size_t>(j)];
    out.m(j) = chosen[static_cast<std::size_t>(j)].dot(P * chosen[static_cast<std::size_t>(j)]);
  }
  out.O_prime = out.O.transpose() * Q;

  const double residual = linalg::max_abs(Matrix(out.reconstruct() - S));
  if (residual > tol.reconstruction * std::max(1.0, linalg::max_abs(S))) {
    throw DecompositionError("Euler reconstruction residual " + detail::fmt(residual));
  }
  return out;
}

} // namespace gaussfid

#endif // GAUSSFID_EULER_HPP
