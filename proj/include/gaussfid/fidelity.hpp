#ifndef GAUSSFID_FIDELITY_HPP
#define GAUSSFID_FIDELITY_HPP

#include <cmath>
#include <string>

#include "williamson.hpp"

namespace gaussfid {

/// Fidelity here is the Uhlmann transition probability
/// [Tr (sqrt(rho1) rho2 sqrt(rho1))^{1/2}]^2; sqrt_fidelity() is its root.

/// Every intermediate of the general multimode formula.
struct FidelityBreakdown {
  Matrix phi1;           ///< Phi(A1)
  ComplexMatrix U;       ///< (A2 - iJ)(Phi(A1) + A2)^{-1}(A2 + iJ)
  Matrix O;              ///< correlation matrix of sqrt(rho1) rho2 sqrt(rho1), normalized
  double imag_residue = 0.0;  ///< max |Im O| discarded
  double L = 0.0;        ///< [det((A1 + A2)/2)]^{-1}
  double L_direct = 0.0; ///< det Phi(A1) / (det((Phi(A1)+A2)/2) det((A2+Phi(A1)-U)/2))
  double det_phi_O = 0.0;
  double F = 0.0;
};

enum class Method { automatic, general, one_mode, thermal };

inline const char *to_string(Method m) {
  switch (m) {
  case Method::automatic: return "auto";
  case Method::general: return "general";
  case Method::one_mode: return "one-mode";
  case Method::thermal: return "thermal";
  }
  return "?";
}

namespace detail {

inline void require_same_modes(const CorrelationMatrix &A1, const CorrelationMatrix &A2) {
  if (A1.modes() != A2.modes()) {
    throw DomainError("mode counts differ: " + std::to_string(A1.modes()) + " vs " +
                      std::to_string(A2.modes()));
  }
}

/// Snaps values within tol.fidelity of 1 to exactly 1 and rejects values
/// outside (0, 1].
inline double clamp_fidelity(double F, const Tolerances &tol) {
  if (!std::isfinite(F) || F <= 0.0) {
    throw NumericalConsistencyError("fidelity evaluated to " + fmt(F));
  }
  if (std::abs(F - 1.0) < tol.fidelity) {
    return 1.0;
  }
  if (F > 1.0) {
    throw NumericalConsistencyError("fidelity " + fmt(F) + " exceeds 1");
  }
  return F;
}

inline ComplexMatrix checked_inverse(const ComplexMatrix &m, const Tolerances &tol,
                                     const char *what) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto &sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > tol.max_condition) {
    throw ConditioningError(std::string(what) + " is singular or ill-conditioned");
  }
  return m.partialPivLu().inverse();
}

inline bool is_thermal_form(const Matrix &A, const Tolerances &tol) {
  const auto n = A.rows() / 2;
  const double eps = tol.symmetry * std::max(1.0, linalg::max_abs(A));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (i != j && std::abs(A(i, j)) > eps) {
        return false;
      }
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(A(j, j) - A(n + j, n + j)) > eps) {
      return false;
    }
  }
  return true;
}

} // namespace detail

/// True when A is diagonal with equal q and p variances per mode, i.e. A
/// commutes with J.
inline bool is_thermal_form(const CorrelationMatrix &A, const Tolerances &tol = {}) {
  return detail::is_thermal_form(A.matrix(), tol);
}

/// Tr rho1 rho2 = det((A1 + A2)/2)^{-1/2}.
inline double overlap(const CorrelationMatrix &A1, const CorrelationMatrix &A2) {
  detail::require_same_modes(A1, A2);
  return std::exp(-0.5 * linalg::log_det_spd(0.5 * (A1.matrix() + A2.matrix())));
}

/// Tr rho_i rho_j rho_k from the Gaussian product rule:
///   [det((Ai + Aj)/2) det((Aj + Ak - (Aj + iJ)(Ai + Aj)^{-1}(Aj - iJ))/2)]^{-1/2}.
/// The sign of iJ is the one matching q-then-p ordering; the opposite sign
/// (p-then-q ordering) yields the complex conjugate, Tr rho_k rho_j rho_i.
/// The second matrix is complex symmetric with positive-definite real part;
/// its determinant root is taken eigenvalue by eigenvalue on the principal
/// branch. The result is complex in general (a Bargmann invariant).
inline Complex triple_overlap(const CorrelationMatrix &Ai, const CorrelationMatrix &Aj,
                              const CorrelationMatrix &Ak) {
  detail::require_same_modes(Ai, Aj);
  detail::require_same_modes(Aj, Ak);
  const Matrix J = standard_form(Ai.modes()).J;
  const Complex I(0.0, 1.0);
  const ComplexMatrix iJ = I * J.cast<Complex>();
  const ComplexMatrix aj = Aj.matrix().cast<Complex>();

  const Matrix sum_ij = Ai.matrix() + Aj.matrix();
  const ComplexMatrix prod =
      aj - (aj + iJ) * sum_ij.inverse().cast<Complex>() * (aj - iJ);
  const ComplexMatrix second = 0.5 * (prod + Ak.matrix().cast<Complex>());

  const Complex log_t =
      -0.5 * (linalg::log_det_spd(0.5 * sum_ij) + linalg::log_det_accretive(second));
  return std::exp(log_t);
}

/// The general multimode formula F = sqrt(L det Phi(O)).
inline FidelityBreakdown fidelity_general(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                                          const Tolerances &tol = {}) {
  detail::require_same_modes(A1, A2);
  const Matrix J = standard_form(A1.modes()).J;
  const Complex I(0.0, 1.0);
  const ComplexMatrix iJ = I * J.cast<Complex>();

  FidelityBreakdown out;
  const PhiResult ph1 = phi(A1, tol);
  out.phi1 = ph1.Phi;
  const ComplexMatrix phi1 = ph1.Phi.cast<Complex>();
  const ComplexMatrix a2 = A2.matrix().cast<Complex>();

  // sqrt(rho1) rho2
  const ComplexMatrix inner = phi1 + a2;
  out.U = (a2 - iJ) * detail::checked_inverse(inner, tol, "Phi(A1) + A2") * (a2 + iJ);
  const ComplexMatrix mid = a2 + phi1 - out.U;

  // (sqrt(rho1) rho2) sqrt(rho1)
  const ComplexMatrix Oc =
      phi1 - (phi1 - iJ) * detail::checked_inverse(mid, tol, "A2 + Phi(A1) - U") * (phi1 + iJ);

  const Matrix O_re = linalg::symmetrized(Oc.real());
  out.imag_residue = linalg::max_abs(Matrix(Oc.imag()));
  if (out.imag_residue > tol.imaginary * linalg::max_abs(O_re)) {
    throw NumericalConsistencyError("imaginary residue of O is " + detail::fmt(out.imag_residue));
  }
  out.O = O_re;

  CorrelationMatrix O = [&] {
    try {
      return validate(O_re, tol);
    } catch (const Error &e) {
      throw NumericalConsistencyError(std::string("O is not a valid correlation matrix (") +
                                      e.what() + ")");
    }
  }();

  const double log_L = -linalg::log_det_spd(0.5 * (A1.matrix() + A2.matrix()));
  out.L = std::exp(log_L);
  const Complex log_L_direct = ph1.log_det - linalg::log_det_spd(0.5 * (ph1.Phi + A2.matrix())) -
                               linalg::log_det_accretive(0.5 * mid);
  out.L_direct = std::exp(log_L_direct.real());

  const PhiResult phO = phi(O, tol);
  out.det_phi_O = std::exp(phO.log_det);
  out.F = detail::clamp_fidelity(std::exp(0.5 * (log_L + phO.log_det)), tol);
  return out;
}

/// Single-mode closed form F = 2 / (sqrt(det(A1 + A2) + P) - sqrt(P)) with
/// P = (det A1 - 1)(det A2 - 1), evaluated in the rationalized form
/// 2 (sqrt(det(A1 + A2) + P) + sqrt(P)) / det(A1 + A2).
inline double fidelity_one_mode(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                                const Tolerances &tol = {}) {
  if (A1.modes() != 1 || A2.modes() != 1) {
    throw DomainError("one-mode formula requires single-mode states");
  }
  const double P = (A1.matrix().determinant() - 1.0) * (A2.matrix().determinant() - 1.0);
  if (P < -tol.pure) {
    throw NumericalConsistencyError("negative purity product " + detail::fmt(P));
  }
  const double p = std::max(P, 0.0);
  const double delta = (A1.matrix() + A2.matrix()).determinant();
  return detail::clamp_fidelity(2.0 * (std::sqrt(delta + p) + std::sqrt(p)) / delta, tol);
}

/// Closed form for commuting thermal-form states,
///   F = sqrt(det(2 / ((A1 A2 + I) - sqrt((A1^2 - I)(A2^2 - I))))),
/// which factorizes over modes. Per mode, with x = a1 a2 + 1 and
/// y = (a1^2 - 1)(a2^2 - 1), x^2 - y = (a1 + a2)^2 so 2/(x - sqrt y) is
/// evaluated as 2 (x + sqrt y) / (a1 + a2)^2.
inline double fidelity_thermal(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                               const Tolerances &tol = {}) {
  detail::require_same_modes(A1, A2);
  if (!is_thermal_form(A1, tol) || !is_thermal_form(A2, tol)) {
    throw DomainError("thermal formula requires diagonal states with equal q and p variances");
  }
  const auto n = static_cast<Eigen::Index>(A1.modes());
  double log_F = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a1 = 0.5 * (A1.matrix()(j, j) + A1.matrix()(n + j, n + j));
    const double a2 = 0.5 * (A2.matrix()(j, j) + A2.matrix()(n + j, n + j));
    const double x = a1 * a2 + 1.0;
    const double y = std::max(0.0, (a1 * a1 - 1.0) * (a2 * a2 - 1.0));
    log_F += std::log(2.0 * (x + std::sqrt(y))) - 2.0 * std::log(a1 + a2);
  }
  return detail::clamp_fidelity(std::exp(log_F), tol);
}

/// Which formula the dispatcher uses for a pair of states.
inline Method select_method(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                            const Tolerances &tol = {}) {
  if (A1.modes() == 1 && A2.modes() == 1) {
    return Method::one_mode;
  }
  if (is_thermal_form(A1, tol) && is_thermal_form(A2, tol)) {
    return Method::thermal;
  }
  return Method::general;
}

inline double fidelity(const CorrelationMatrix &A1, const CorrelationMatrix &A2, Method method,
                       const Tolerances &tol = {}) {
  detail::require_same_modes(A1, A2);
  if (method == Method::automatic) {
    method = select_method(A1, A2, tol);
  }
  switch (method) {
  case Method::one_mode: return fidelity_one_mode(A1, A2, tol);
  case Method::thermal: return fidelity_thermal(A1, A2, tol);
  case Method::general:
  case Method::automatic: break;
  }
  return fidelity_general(A1, A2, tol).F;
}

inline double fidelity(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                       const Tolerances &tol = {}) {
  return fidelity(A1, A2, Method::automatic, tol);
}

/// Tr (sqrt(rho1) rho2 sqrt(rho1))^{1/2}.
inline double sqrt_fidelity(const CorrelationMatrix &A1, const CorrelationMatrix &A2,
                            const Tolerances &tol = {}) {
  return std::sqrt(fidelity(A1, A2, tol));
}

} // namespace gaussfid

#endif // GAUSSFID_FIDELITY_HPP
