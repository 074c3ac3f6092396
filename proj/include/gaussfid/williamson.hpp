#ifndef GAUSSFID_WILLIAMSON_HPP
#define GAUSSFID_WILLIAMSON_HPP

#include <cmath>
#include <vector>

#include "correlation.hpp"

namespace gaussfid {

/// A = S^T (diag(d) (+) diag(d)) S with S symplectic and d sorted descending.
struct WilliamsonDecomposition {
  Matrix S;
  Vector d;

  Matrix normal_form() const { return linalg::doubled_diagonal(d); }
  Matrix reconstruct() const { return S.transpose() * normal_form() * S; }
};

namespace detail {

/// Replaces the columns of `vecs` spanning one degenerate eigenspace by the
/// Gram-Schmidt orthonormalization of the projected standard basis vectors,
/// taken in index order. The result no longer depends on how the eigensolver
/// happened to pick a basis inside the cluster.
inline ComplexMatrix canonical_cluster_basis(const ComplexMatrix &vecs) {
  const Eigen::Index dim = vecs.rows();
  const Eigen::Index k = vecs.cols();
  const ComplexMatrix proj = vecs * vecs.adjoint();
  const double threshold = 0.5 / std::sqrt(static_cast<double>(dim));

  ComplexMatrix basis(dim, k);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < dim && found < k; ++i) {
    ComplexVector w = proj.col(i);
    for (Eigen::Index j = 0; j < found; ++j) {
      w -= basis.col(j) * basis.col(j).dot(w);
    }
    const double norm = w.norm();
    if (norm > threshold) {
      basis.col(found++) = w / norm;
    }
  }
  if (found < k) {
    return vecs;
  }
  return basis;
}

} // namespace detail

/// Williamson normal form from the Hermitian matrix i A^{1/2} J A^{1/2}.
///
/// An eigenvector x + iy of that matrix for the eigenvalue +d satisfies
/// H x = d y, H y = -d x with H = A^{1/2} J A^{1/2}, and sqrt(2){y, x} form a
/// real orthonormal pair. Collecting them into an orthogonal O with
/// O^T H O = [[0, D], [-D, 0]] gives S = D^{-1/2} O^T A^{1/2}.
inline WilliamsonDecomposition williamson(const CorrelationMatrix &corr, const Tolerances &tol = {}) {
  const Matrix &A = corr.matrix();
  const auto n = static_cast<Eigen::Index>(corr.modes());
  const Matrix root = linalg::sqrt_psd(A);
  const Matrix J = standard_form(corr.modes()).J;
  const ComplexMatrix herm = Complex(0.0, 1.0) * (root * J * root).cast<Complex>();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  if (es.info() != Eigen::Success) {
    throw DecompositionError("Hermitian eigensolver did not converge");
  }
  // positive half of the spectrum, descending
  Vector d = es.eigenvalues().tail(n).reverse();
  ComplexMatrix vecs = es.eigenvectors().rightCols(n).rowwise().reverse();

  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && std::abs(d(stop) - d(start)) <= 1e-8 * std::max(1.0, d(start))) {
      ++stop;
    }
    vecs.middleCols(start, stop - start) =
        detail::canonical_cluster_basis(vecs.middleCols(start, stop - start));
    start = stop;
  }

  Matrix O(2 * n, 2 * n);
  const double s2 = std::sqrt(2.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    O.col(j) = s2 * vecs.col(j).imag();
    O.col(n + j) = s2 * vecs.col(j).real();
  }

  Vector inv_sqrt(2 * n);
  inv_sqrt << d.cwiseSqrt().cwiseInverse(), d.cwiseSqrt().cwiseInverse();
  WilliamsonDecomposition out{inv_sqrt.asDiagonal() * O.transpose() * root, d};

  const double residual = linalg::max_abs(Matrix(out.reconstruct() - A));
  if (residual > tol.reconstruction * linalg::max_abs(A)) {
    throw DecompositionError("reconstruction residual " + detail::fmt(residual));
  }
  return out;
}

/// Correlation matrix Phi(A) = A (I + sqrt(I + (JA)^{-2})) of the unnormalized
/// Gaussian operator sqrt(rho), together with K = (det Phi)^{1/4} so that
/// CF(sqrt(rho)) = K exp(-u^T Phi u / 4).
struct PhiResult {
  Matrix Phi;
  double K = 1.0;
  double log_det = 0.0;  ///< log det Phi
};

/// Evaluates Phi(A) = A + S^T sqrt(D^2 - I) S from the Williamson form, which
/// equals A sqrt(I + (JA)^{-2}) + A. Roundoff can push d_j^2 - 1 slightly below
/// zero for pure modes; those entries are clamped.
///
/// sqrt(d^2 - 1) turns a roundoff-sized error in d into one of its square root,
/// so d within the eigensolver's own accuracy of 1 is treated as exactly 1.
inline PhiResult phi(const CorrelationMatrix &A, const Tolerances &tol = {}) {
  const WilliamsonDecomposition w = williamson(A, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> es(A.matrix(), Eigen::EigenvaluesOnly);
  const double condition = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() *
                          static_cast<double>(A.modes()) * condition;
  Vector excess = (w.d.array().square() - 1.0).matrix();
  for (Eigen::Index j = 0; j < excess.size(); ++j) {
    if (excess(j) < 0.0 || std::abs(w.d(j) - 1.0) <= roundoff) {
      excess(j) = 0.0;
    }
  }
  const Matrix correction = w.S.transpose() * linalg::doubled_diagonal(excess.cwiseSqrt()) * w.S;
  PhiResult out;
  out.Phi = linalg::symmetrized(A.matrix() + correction);
  // det S = 1, so det Phi = prod_j (d_j + sqrt(d_j^2 - 1))^2
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < excess.size(); ++j) {
    log_det += excess(j) == 0.0 ? 0.0 : 2.0 * std::log(w.d(j) + std::sqrt(excess(j)));
  }
  out.log_det = log_det;
  out.K = std::exp(0.25 * log_det);
  return out;
}

} // namespace gaussfid

#endif // GAUSSFID_WILLIAMSON_HPP
