#ifndef GAUSSFID_CORRELATION_HPP
#define GAUSSFID_CORRELATION_HPP

#include <cmath>
#include <cstdio>
#include <string>

#include "symplectic.hpp"

namespace gaussfid {

class CorrelationMatrix;
CorrelationMatrix validate(const Matrix &A, const Tolerances &tol);

/// Correlation matrix A of a zero-mean Gaussian state, in the convention
/// CF(u) = exp(-u^T A u / 4) so that the vacuum is the identity. Instances
/// only come out of validate(), hence always symmetric, positive definite and
/// compatible with the uncertainty principle A + iJ >= 0.
class CorrelationMatrix {
public:
  const Matrix &matrix() const noexcept { return A_; }
  std::size_t modes() const noexcept { return static_cast<std::size_t>(A_.rows() / 2); }

  operator const Matrix &() const noexcept { return A_; }

private:
  explicit CorrelationMatrix(Matrix A) : A_(std::move(A)) {}
  friend CorrelationMatrix validate(const Matrix &A, const Tolerances &tol);

  Matrix A_;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Symplectic eigenvalues without any validation: the positive eigenvalues of
/// the Hermitian matrix i A^{1/2} J A^{1/2}, in descending order.
inline Vector raw_symplectic_eigenvalues(const Matrix &A) {
  const auto n = static_cast<Eigen::Index>(mode_count(A));
  const Matrix root = linalg::sqrt_psd(A);
  const Matrix J = standard_form(static_cast<std::size_t>(n)).J;
  const ComplexMatrix herm = Complex(0.0, 1.0) * (root * J * root).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  // ascending order: the last n are the positive ones
  return es.eigenvalues().tail(n).reverse();
}

} // namespace detail

inline CorrelationMatrix validate(const Matrix &A, const Tolerances &tol = {}) {
  const std::size_t n = mode_count(A);
  if (!A.allFinite()) {
    throw DomainError("matrix has non-finite entries");
  }
  const double scale = linalg::max_abs(A);
  const double asym = linalg::max_abs(Matrix(A - A.transpose()));
  if (asym > tol.symmetry * scale) {
    throw SymmetryError("max |A - A^T| = " + detail::fmt(asym));
  }
  Matrix sym = linalg::symmetrized(A);

  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(es.eigenvalues().size() - 1);
  if (!(lo > 0.0)) {
    throw DefinitenessError("smallest eigenvalue " + detail::fmt(lo) + " is not positive");
  }
  if (hi / lo > tol.max_condition) {
    throw ConditioningError("condition number " + detail::fmt(hi / lo) + " exceeds " +
                            detail::fmt(tol.max_condition));
  }

  // A <= -J A^{-1} J, tested as A + iJ >= 0
  const Matrix J = standard_form(n).J;
  const ComplexMatrix uncertainty =
      sym.cast<Complex>() + Complex(0.0, 1.0) * J.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> hes(uncertainty, Eigen::EigenvaluesOnly);
  if (hes.eigenvalues()(0) < -tol.eigen) {
    const Vector d = detail::raw_symplectic_eigenvalues(sym);
    throw UncertaintyViolation("smallest symplectic eigenvalue " +
                               detail::fmt(d(d.size() - 1)) + " < 1");
  }
  return CorrelationMatrix(std::move(sym));
}

/// Symplectic eigenvalues d_1 >= ... >= d_n (each >= 1 for a valid state).
inline Vector symplectic_eigenvalues(const CorrelationMatrix &A) {
  return detail::raw_symplectic_eigenvalues(A.matrix());
}

/// A state is pure iff A = -J A^{-1} J, i.e. every symplectic eigenvalue is 1.
inline bool is_pure(const CorrelationMatrix &A, const Tolerances &tol = {}) {
  const Vector d = symplectic_eigenvalues(A);
  return ((d.array() - 1.0).abs() <= tol.pure).all();
}

/// Tr rho^2 = det(A)^{-1/2}.
inline double purity(const CorrelationMatrix &A) {
  return std::exp(-0.5 * linalg::log_det_spd(A.matrix()));
}

/// Correlation matrix of rho_1 (x) rho_2, reordered so that the q's of both
/// factors precede their p's.
inline CorrelationMatrix tensor(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                                const Tolerances &tol = {}) {
  const auto n1 = static_cast<Eigen::Index>(A1.modes());
  const auto n2 = static_cast<Eigen::Index>(A2.modes());
  const auto n = n1 + n2;
  Matrix out = Matrix::Zero(2 * n, 2 * n);

  auto place = [&](const Matrix &src, Eigen::Index offset, Eigen::Index size) {
    auto target = [&](Eigen::Index i) { return i < size ? offset + i : n + offset + (i - size); };
    for (Eigen::Index i = 0; i < 2 * size; ++i) {
      for (Eigen::Index j = 0; j < 2 * size; ++j) {
        out(target(i), target(j)) = src(i, j);
      }
    }
  };
  place(A1.matrix(), 0, n1);
  place(A2.matrix(), n1, n2);
  return validate(out, tol);
}

/// Correlation matrix of U(S) rho U(S)^dagger, namely S^T A S.
inline CorrelationMatrix conjugate(const CorrelationMatrix &A, const Matrix &S,
                                   const Tolerances &tol = {}) {
  if (S.rows() != A.matrix().rows() || S.cols() != A.matrix().cols()) {
    throw DomainError("transform dimension does not match the state");
  }
  require_symplectic(S, tol);
  return validate(S.transpose() * A.matrix() * S, tol);
}

} // namespace gaussfid

#endif // GAUSSFID_CORRELATION_HPP
