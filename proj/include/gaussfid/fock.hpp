#ifndef GAUSSFID_FOCK_HPP
#define GAUSSFID_FOCK_HPP

// Brute-force reference: Gaussian states of one or two modes written out as
// truncated Fock-space density matrices, with the Uhlmann fidelity and trace
// products evaluated by plain dense linear algebra.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include "euler.hpp"
#include "fidelity.hpp"

namespace gaussfid::fock {

using SparseComplex = Eigen::SparseMatrix<Complex>;

struct OracleOptions {
  double max_deficit = 1e-3;       ///< largest accepted 1 - Tr rho of a built state
  double max_leakage = 1e-3;       ///< largest accepted vacuum-column norm loss of a squeezer
  int working_margin = 40;         ///< extra levels used when exponentiating generators
  Eigen::Index dense_limit = 1024; ///< above this dimension the fidelity uses a low-rank route
  double low_rank_residual = 1e-13;  ///< trace of rho1 left outside the captured subspace
  Eigen::Index max_rank = 1024;
  double negative_eigen = 1e-10;   ///< eigenvalues below -this are rejected, above are clamped
};

constexpr int max_cutoff = 100;

struct FockDensityMatrix {
  int modes = 1;
  int cutoff = 0;
  ComplexMatrix rho;
  double deficit = 0.0;  ///< 1 - Tr rho, probability lost to truncation

  Eigen::Index dimension() const { return rho.rows(); }
};

/// Restriction of a unitary to the first N Fock levels. `leakage` is the norm
/// loss 1 - ||P U|0>||^2 of the vacuum column.
struct TruncatedUnitary {
  ComplexMatrix U;
  double leakage = 0.0;
};

namespace detail {

inline void check_cutoff(int cutoff) {
  if (cutoff < 2 || cutoff > max_cutoff) {
    throw DomainError("Fock cutoff must lie in [2, " + std::to_string(max_cutoff) + "], got " +
                      std::to_string(cutoff));
  }
}

inline Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index out = 1;
  for (int i = 0; i < exp; ++i) {
    out *= base;
  }
  return out;
}

inline ComplexMatrix lowering(int dim) {
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) {
    a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return a;
}

inline SparseComplex sparse_lowering(int cutoff, int modes, int which) {
  const Eigen::Index dim = ipow(cutoff, modes);
  std::vector<Eigen::Triplet<Complex>> entries;
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const Eigen::Index k = modes == 1 ? idx : (which == 0 ? idx / cutoff : idx % cutoff);
    if (k == 0) {
      continue;
    }
    const Eigen::Index target = modes == 1 || which == 1 ? idx - 1 : idx - cutoff;
    entries.emplace_back(target, idx, std::sqrt(static_cast<double>(k)));
  }
  SparseComplex a(dim, dim);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

/// Applies a single-mode operator to mode `which` of a state vector.
inline ComplexVector apply_mode(const ComplexMatrix &op, const ComplexVector &v, int cutoff,
                                int modes, int which) {
  if (modes == 1) {
    return op * v;
  }
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> psi(v.data(), cutoff, cutoff);
  RowMajor out = which == 0 ? RowMajor(op * psi) : RowMajor(psi * op.transpose());
  return Eigen::Map<const ComplexVector>(out.data(), out.size());
}

inline double trace_deficit(const ComplexMatrix &rho) { return 1.0 - rho.trace().real(); }

} // namespace detail

/// Thermal state with p_k = nbar^k / (nbar + 1)^{k+1}, k < cutoff.
inline FockDensityMatrix thermal_density(double nbar, int cutoff) {
  detail::check_cutoff(cutoff);
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw DomainError("mean photon number must be finite and non-negative");
  }
  FockDensityMatrix out;
  out.modes = 1;
  out.cutoff = cutoff;
  out.rho = ComplexMatrix::Zero(cutoff, cutoff);
  const double ratio = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  for (int k = 0; k < cutoff; ++k) {
    out.rho(k, k) = p;
    p *= ratio;
  }
  out.deficit = detail::trace_deficit(out.rho);
  return out;
}

/// Single-mode squeezer exp((conj(xi) a^2 - xi a^dag^2) / 2), xi = r e^{i theta}.
/// The generator is truncated at cutoff + margin, exponentiated by scaling and
/// squaring, and the result restricted to the first `cutoff` levels.
inline TruncatedUnitary squeeze_unitary(double r, double theta, int cutoff,
                                        const OracleOptions &opts = {}) {
  detail::check_cutoff(cutoff);
  if (!(std::abs(r) <= 3.0)) {
    throw DomainError("squeezing |r| must not exceed 3");
  }
  const int work = cutoff + opts.working_margin;
  const ComplexMatrix a = detail::lowering(work);
  const ComplexMatrix a2 = a * a;
  const Complex xi = std::polar(r, theta);
  const ComplexMatrix generator = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
  const ComplexMatrix full = generator.exp();

  TruncatedUnitary out;
  out.U = full.topLeftCorner(cutoff, cutoff);
  out.leakage = 1.0 - out.U.col(0).squaredNorm();
  if (out.leakage > opts.max_leakage) {
    throw TruncationError("squeezing r = " + gaussfid::detail::fmt(r) + " does not fit cutoff " +
                              std::to_string(cutoff) + " (leakage " +
                              gaussfid::detail::fmt(out.leakage) + ")",
                          out.leakage);
  }
  return out;
}

/// Passive (number-conserving) unitary U = exp(-i sum_jk h_jk a_j^dag a_k) with
/// U^dag a U = u a for a 1x1 or 2x2 unitary u. Each total-photon-number sector
/// is exponentiated exactly before restricting to per-mode levels < cutoff.
inline SparseComplex passive_unitary(const ComplexMatrix &u, int cutoff) {
  detail::check_cutoff(cutoff);
  const int modes = static_cast<int>(u.rows());
  if (u.rows() != u.cols() || (modes != 1 && modes != 2)) {
    throw DomainError("passive transformations are supported for one or two modes");
  }
  if (linalg::max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(modes, modes))) > 1e-10) {
    throw DomainError("mode transformation is not unitary");
  }
  // u = Z diag(e^{i phi}) Z^dag, h = -Z diag(phi) Z^dag
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix &Z = schur.matrixU();
  ComplexVector phase(modes);
  for (int j = 0; j < modes; ++j) {
    phase(j) = -std::arg(schur.matrixT()(j, j));
  }
  const ComplexMatrix h = Z * phase.asDiagonal() * Z.adjoint();

  const Eigen::Index dim = detail::ipow(cutoff, modes);
  std::vector<Eigen::Triplet<Complex>> entries;
  if (modes == 1) {
    for (int k = 0; k < cutoff; ++k) {
      entries.emplace_back(k, k, std::exp(Complex(0.0, -1.0) * h(0, 0) * static_cast<double>(k)));
    }
  } else {
    for (int s = 0; s <= 2 * (cutoff - 1); ++s) {
      const int size = s + 1;  // states |k, s - k>, k = 0..s
      ComplexMatrix gen = ComplexMatrix::Zero(size, size);
      for (int k = 0; k <= s; ++k) {
        const int l = s - k;
        gen(k, k) = h(0, 0) * static_cast<double>(k) + h(1, 1) * static_cast<double>(l);
        if (l > 0) {
          // a_0^dag a_1 |k, l> = sqrt((k + 1) l) |k + 1, l - 1>
          gen(k + 1, k) = h(0, 1) * std::sqrt(static_cast<double>((k + 1) * l));
        }
        if (k > 0) {
          gen(k - 1, k) = h(1, 0) * std::sqrt(static_cast<double>(k * (l + 1)));
        }
      }
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gen);
      ComplexVector phases(size);
      for (int i = 0; i < size; ++i) {
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
      }
      const ComplexMatrix block = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
      for (int k = std::max(0, s - cutoff + 1); k <= std::min(s, cutoff - 1); ++k) {
        for (int kk = std::max(0, s - cutoff + 1); kk <= std::min(s, cutoff - 1); ++kk) {
          entries.emplace_back(k * cutoff + (s - k), kk * cutoff + (s - kk), block(k, kk));
        }
      }
    }
  }
  SparseComplex U(dim, dim);
  U.setFromTriplets(entries.begin(), entries.end());
  return U;
}

namespace detail {

/// Complex mode matrix u = X + iY of an orthogonal symplectic K = [[X, -Y], [Y, X]].
inline ComplexMatrix mode_unitary(const Matrix &K) {
  const auto n = K.rows() / 2;
  ComplexMatrix u(n, n);
  u.real() = K.topLeftCorner(n, n);
  u.imag() = K.bottomLeftCorner(n, n);
  return u;
}

inline FockDensityMatrix product_thermal(const Matrix &A, int cutoff) {
  const int modes = static_cast<int>(A.rows() / 2);
  FockDensityMatrix first = thermal_density(std::max(0.0, 0.5 * (A(0, 0) - 1.0)), cutoff);
  if (modes == 1) {
    return first;
  }
  const FockDensityMatrix second = thermal_density(std::max(0.0, 0.5 * (A(1, 1) - 1.0)), cutoff);
  FockDensityMatrix out;
  out.modes = 2;
  out.cutoff = cutoff;
  const Eigen::Index dim = ipow(cutoff, 2);
  out.rho = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < cutoff; ++k) {
    for (int l = 0; l < cutoff; ++l) {
      out.rho(k * cutoff + l, k * cutoff + l) = first.rho(k, k) * second.rho(l, l);
    }
  }
  out.deficit = trace_deficit(out.rho);
  return out;
}

} // namespace detail

/// Density matrix of a one- or two-mode Gaussian state. With the Williamson
/// form A = S^T D S and the Euler form S = O M O', the state is
/// U rho_D U^dag where U = U(O'^T) U(M) U(O^T) acts on quadratures as S^T.
/// Thermal components p_k below 1e-18 are dropped (their weight shows up in
/// the deficit).
inline FockDensityMatrix gaussian_density(const CorrelationMatrix &A, int cutoff,
                                          const OracleOptions &opts = {},
                                          const Tolerances &tol = {}) {
  detail::check_cutoff(cutoff);
  const int modes = static_cast<int>(A.modes());
  if (modes > 2) {
    throw TruncationError("the Fock oracle handles at most two modes", static_cast<double>(modes));
  }

  FockDensityMatrix out;
  if (is_thermal_form(A, tol)) {
    out = detail::product_thermal(A.matrix(), cutoff);
  } else {
    const WilliamsonDecomposition w = williamson(A, tol);
    const EulerDecomposition e = euler_decompose(w.S, tol);

    const SparseComplex first = passive_unitary(detail::mode_unitary(e.O.transpose()), cutoff);
    const SparseComplex last = passive_unitary(detail::mode_unitary(e.O_prime.transpose()), cutoff);
    std::vector<ComplexMatrix> squeezers;
    for (int j = 0; j < modes; ++j) {
      squeezers.push_back(squeeze_unitary(-std::log(e.m(j)), 0.0, cutoff, opts).U);
    }

    // thermal weights of rho_D in the product basis
    std::vector<std::vector<double>> weights;
    for (int j = 0; j < modes; ++j) {
      const FockDensityMatrix th = thermal_density(std::max(0.0, 0.5 * (w.d(j) - 1.0)), cutoff);
      std::vector<double> p(static_cast<std::size_t>(cutoff));
      for (int k = 0; k < cutoff; ++k) {
        p[static_cast<std::size_t>(k)] = th.rho(k, k).real();
      }
      weights.push_back(std::move(p));
    }
    const Eigen::Index dim = detail::ipow(cutoff, modes);
    std::vector<std::pair<double, Eigen::Index>> terms;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      double p = weights[0][static_cast<std::size_t>(modes == 1 ? idx : idx / cutoff)];
      if (modes == 2) {
        p *= weights[1][static_cast<std::size_t>(idx % cutoff)];
      }
      if (p > 1e-18) {
        terms.emplace_back(p, idx);
      }
    }

    ComplexMatrix columns(dim, static_cast<Eigen::Index>(terms.size()));
    for (std::size_t t = 0; t < terms.size(); ++t) {
      ComplexVector v = ComplexVector::Zero(dim);
      v(terms[t].second) = 1.0;
      v = first * v;
      for (int j = 0; j < modes; ++j) {
        v = detail::apply_mode(squeezers[static_cast<std::size_t>(j)], v, cutoff, modes, j);
      }
      v = last * v;
      columns.col(static_cast<Eigen::Index>(t)) = std::sqrt(terms[t].first) * v;
    }
    out.modes = modes;
    out.cutoff = cutoff;
    out.rho.noalias() = columns * columns.adjoint();
    out.deficit = detail::trace_deficit(out.rho);
  }

  if (out.deficit > opts.max_deficit) {
    throw TruncationError("state does not fit cutoff " + std::to_string(cutoff) +
                              " (truncation deficit " + gaussfid::detail::fmt(out.deficit) + ")",
                          out.deficit);
  }
  return out;
}

/// Measured correlation matrix Tr(rho {R_i, R_j}) / 2 / Tr(rho) with vacuum
/// normalized quadratures q = a + a^dag, p = -i (a - a^dag).
inline Matrix second_moments(const FockDensityMatrix &state) {
  const int modes = state.modes;
  std::vector<SparseComplex> quad;
  for (int j = 0; j < modes; ++j) {
    const SparseComplex a = detail::sparse_lowering(state.cutoff, modes, j);
    const SparseComplex ad = SparseComplex(a.adjoint());
    quad.push_back(a + ad);
  }
  for (int j = 0; j < modes; ++j) {
    const SparseComplex a = detail::sparse_lowering(state.cutoff, modes, j);
    const SparseComplex ad = SparseComplex(a.adjoint());
    quad.push_back(Complex(0.0, -1.0) * (a - ad));
  }
  const double norm = state.rho.trace().real();
  const auto m = static_cast<Eigen::Index>(quad.size());
  Matrix out(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      const SparseComplex anti = quad[static_cast<std::size_t>(i)] * quad[static_cast<std::size_t>(j)] +
                                 quad[static_cast<std::size_t>(j)] * quad[static_cast<std::size_t>(i)];
      Complex acc{0.0, 0.0};
      for (Eigen::Index c = 0; c < anti.outerSize(); ++c) {
        for (SparseComplex::InnerIterator it(anti, c); it; ++it) {
          acc += it.value() * state.rho(it.col(), it.row());
        }
      }
      out(i, j) = out(j, i) = 0.5 * acc.real() / norm;
    }
  }
  return out;
}

namespace detail {

inline void require_hermitian(const ComplexMatrix &rho) {
  if (linalg::max_abs(ComplexMatrix(rho - rho.adjoint())) > 1e-12) {
    throw DomainError("density matrix is not Hermitian");
  }
}

/// Eigenpairs of a PSD matrix with eigenvalues clamped at zero; eigenvalues
/// below -threshold are rejected.
struct Spectrum {
  Vector values;
  ComplexMatrix vectors;
};

inline Vector clamp_spectrum(Vector values, double threshold) {
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) < -threshold) {
      throw DomainError("density matrix has eigenvalue " + gaussfid::detail::fmt(values(i)));
    }
    values(i) = std::max(values(i), 0.0);
  }
  return values;
}

inline Spectrum dense_spectrum(const ComplexMatrix &rho, double threshold) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  return {clamp_spectrum(es.eigenvalues(), threshold), es.eigenvectors()};
}

/// Dominant eigenpairs by randomized subspace iteration, doubling the rank
/// until the trace left outside the subspace drops below the residual target.
inline Spectrum low_rank_spectrum(const ComplexMatrix &rho, const OracleOptions &opts) {
  const Eigen::Index dim = rho.rows();
  const double total = rho.trace().real();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  for (Eigen::Index rank = 32; rank <= std::min(opts.max_rank, dim); rank *= 2) {
    ComplexMatrix sketch(dim, rank);
    for (Eigen::Index i = 0; i < sketch.size(); ++i) {
      sketch.data()[i] = Complex(gauss(rng), gauss(rng));
    }
    ComplexMatrix basis;
    for (int pass = 0; pass < 4; ++pass) {
      const ComplexMatrix image = rho * (pass == 0 ? sketch : basis);
      Eigen::HouseholderQR<ComplexMatrix> qr(image);
      basis = qr.householderQ() * ComplexMatrix::Identity(dim, rank);
    }
    const ComplexMatrix projected = basis.adjoint() * rho * basis;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (projected + projected.adjoint()));
    const Vector values = clamp_spectrum(es.eigenvalues(), opts.negative_eigen);
    if (total - values.sum() <= opts.low_rank_residual) {
      return {values, basis * es.eigenvectors()};
    }
  }
  throw TruncationError("first state is not numerically low-rank at this dimension",
                        static_cast<double>(dim));
}

inline void require_compatible(const FockDensityMatrix &a, const FockDensityMatrix &b) {
  if (a.modes != b.modes || a.cutoff != b.cutoff || a.rho.rows() != b.rho.rows()) {
    throw DomainError("density matrices have different shapes");
  }
}

} // namespace detail

/// [Tr (sqrt(rho1) rho2 sqrt(rho1))^{1/2}]^2 by eigendecomposition. With
/// sqrt(rho1) = V diag(sqrt(l)) V^dag, the nonzero spectrum of
/// sqrt(rho1) rho2 sqrt(rho1) is that of diag(sqrt(l)) V^dag rho2 V diag(sqrt(l)),
/// which lets large two-mode matrices go through a low-rank V.
inline double uhlmann_fidelity_numeric(const FockDensityMatrix &rho1, const FockDensityMatrix &rho2,
                                       const OracleOptions &opts = {}) {
  detail::require_compatible(rho1, rho2);
  detail::require_hermitian(rho1.rho);
  detail::require_hermitian(rho2.rho);

  const detail::Spectrum sp = rho1.dimension() <= opts.dense_limit
                                  ? detail::dense_spectrum(rho1.rho, opts.negative_eigen)
                                  : detail::low_rank_spectrum(rho1.rho, opts);
  const Vector roots = sp.values.cwiseSqrt();
  const ComplexMatrix scaled = sp.vectors * roots.asDiagonal();
  ComplexMatrix inner = scaled.adjoint() * rho2.rho * scaled;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const Vector mu = detail::clamp_spectrum(
      Eigen::SelfAdjointEigenSolver<ComplexMatrix>(inner, Eigen::EigenvaluesOnly).eigenvalues(),
      opts.negative_eigen);
  const double root_fidelity = mu.cwiseSqrt().sum();
  return root_fidelity * root_fidelity;
}

/// Tr(rho_1 rho_2 ... rho_k) by literal multiplication.
inline Complex trace_product_numeric(const std::vector<std::reference_wrapper<const FockDensityMatrix>> &rhos) {
  if (rhos.empty()) {
    throw DomainError("trace of an empty product");
  }
  for (const auto &r : rhos) {
    detail::require_compatible(rhos.front().get(), r.get());
  }
  if (rhos.size() == 1) {
    return rhos.front().get().rho.trace();
  }
  ComplexMatrix prod = rhos.front().get().rho;
  for (std::size_t i = 1; i + 1 < rhos.size(); ++i) {
    prod = (prod * rhos[i].get().rho).eval();
  }
  // Tr(P X) = sum_ij P_ij X_ji
  return prod.cwiseProduct(rhos.back().get().rho.transpose()).sum();
}

} // namespace gaussfid::fock

#endif // GAUSSFID_FOCK_HPP
