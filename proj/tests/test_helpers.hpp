#ifndef GAUSSFID_TEST_HELPERS_HPP
#define GAUSSFID_TEST_HELPERS_HPP

// Random generators for property tests. Every generator takes the engine by
// reference so a fixed seed reproduces a whole test run.

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include <gaussfid/correlation.hpp>
#include <gaussfid/states.hpp>

namespace gaussfid::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_symmetric(Eigen::Index dim, Rng &rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Matrix R(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      R(i, j) = R(j, i) = g(rng);
    }
  }
  return R;
}

/// exp(J R) with R symmetric is symplectic.
inline Matrix random_symplectic(std::size_t n, Rng &rng, double scale = 0.4) {
  const Matrix J = standard_form(n).J;
  const Matrix R = random_symmetric(static_cast<Eigen::Index>(2 * n), rng, scale);
  return Matrix(J * R).exp();
}

/// Orthogonal symplectic matrix: exp(J R) with R symmetric and commuting with J.
inline Matrix random_passive(std::size_t n, Rng &rng) {
  const Matrix J = standard_form(n).J;
  Matrix R = random_symmetric(static_cast<Eigen::Index>(2 * n), rng, 1.0);
  R = 0.5 * (R - J * R * J);
  return Matrix(J * R).exp();
}

inline Vector random_symplectic_spectrum(std::size_t n, Rng &rng, double hi = 4.0) {
  Vector d(static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    d(j) = uniform(rng, 1.0, hi);
  }
  return d;
}

inline CorrelationMatrix random_state(std::size_t n, Rng &rng, double scale = 0.4) {
  const Matrix S = random_symplectic(n, rng, scale);
  const Vector d = random_symplectic_spectrum(n, rng);
  return validate(S.transpose() * linalg::doubled_diagonal(d) * S);
}

inline CorrelationMatrix random_pure_state(std::size_t n, Rng &rng, double scale = 0.4) {
  const Matrix S = random_symplectic(n, rng, scale);
  return validate(S.transpose() * S);
}

inline CorrelationMatrix random_thermal(std::size_t n, Rng &rng, double max_nbar = 3.0) {
  std::vector<double> nbar(n);
  for (auto &x : nbar) {
    x = uniform(rng, 0.0, max_nbar);
  }
  return thermal_state(nbar);
}

inline CorrelationMatrix random_one_mode(Rng &rng) {
  return squeezed_thermal_state({uniform(rng, 0.0, 2.0)}, {uniform(rng, -1.0, 1.0)},
                                {uniform(rng, 0.0, 2.0 * M_PI)});
}

} // namespace gaussfid::testing

#endif // GAUSSFID_TEST_HELPERS_HPP
