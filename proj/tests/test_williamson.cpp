#include <catch2/catch.hpp>

#include <algorithm>

#include <gaussfid/euler.hpp>
#include <gaussfid/williamson.hpp>

#include "test_helpers.hpp"

using namespace gaussfid;

namespace {

// Symplectic eigenvalues by brute force: moduli of the eigenvalues of the
// non-normal matrix iJA, positive half, descending.
std::vector<double> brute_force_symplectic_spectrum(const Matrix &A) {
  const Matrix J = standard_form(static_cast<std::size_t>(A.rows() / 2)).J;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(Complex(0, 1) * (J * A).cast<Complex>());
  std::vector<double> values;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i).real() > 0) {
      values.push_back(es.eigenvalues()(i).real());
    }
  }
  std::sort(values.rbegin(), values.rend());
  return values;
}

double reconstruction_residual(const CorrelationMatrix &A, const WilliamsonDecomposition &w) {
  return linalg::max_abs(Matrix(w.reconstruct() - A.matrix()));
}

} // namespace

TEST_CASE("williamson of simple states", "[williamson]") {
  const auto vac = validate(Matrix::Identity(2, 2));
  const auto w = williamson(vac);
  CHECK(w.d(0) == Approx(1.0).epsilon(1e-14));
  CHECK(reconstruction_residual(vac, w) < 1e-14);

  CHECK(williamson(thermal_state({1.0})).d(0) == Approx(3.0).epsilon(1e-14));

  Matrix sq(2, 2);
  sq << std::exp(2.0), 0, 0, std::exp(-2.0);
  const auto A = validate(sq);
  CHECK(A.matrix().determinant() == Approx(1.0).epsilon(1e-14));
  const auto brute = brute_force_symplectic_spectrum(sq);
  REQUIRE(brute.size() == 1);
  CHECK(brute[0] == Approx(1.0).epsilon(1e-12));
  CHECK(williamson(A).d(0) == Approx(brute[0]).epsilon(1e-12));
}

TEST_CASE("williamson spectrum agrees with brute-force iJA eigenvalues", "[williamson][property]") {
  testing::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    const auto A = testing::random_state(1 + static_cast<std::size_t>(i % 3), rng);
    const auto brute = brute_force_symplectic_spectrum(A.matrix());
    const Vector d = williamson(A).d;
    for (Eigen::Index j = 0; j < d.size(); ++j) {
      CHECK(d(j) == Approx(brute[static_cast<std::size_t>(j)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("williamson round trip on random states", "[williamson][property]") {
  testing::Rng rng(22);
  Tolerances tol;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    const auto A = i % 4 == 0 ? testing::random_pure_state(n, rng) : testing::random_state(n, rng);
    const auto w = williamson(A);
    CHECK(reconstruction_residual(A, w) <= tol.reconstruction * linalg::max_abs(A.matrix()));
    CHECK(is_symplectic(w.S));
    CHECK(std::is_sorted(w.d.data(), w.d.data() + w.d.size(), std::greater<>()));
    CHECK(w.d.minCoeff() >= 1.0 - tol.eigen);
  }
}

TEST_CASE("williamson is deterministic on degenerate spectra", "[williamson]") {
  // 3 (+) 3 thermal, rotated by a passive transform: a two-fold cluster
  testing::Rng rng(23);
  const Matrix K = testing::random_passive(2, rng);
  const auto A = conjugate(thermal_state({1.0, 1.0}), K);
  const auto w1 = williamson(A);
  const auto w2 = williamson(A);
  CHECK(w1.S == w2.S);
  CHECK(reconstruction_residual(A, w1) < 1e-12);
  CHECK(w1.d(0) == Approx(3.0));
  CHECK(w1.d(1) == Approx(3.0));

  // any basis of the cluster gives the same canonical S
  const auto diag = thermal_state({1.0, 1.0});
  const auto wd = williamson(diag);
  CHECK(reconstruction_residual(diag, wd) < 1e-13);
  CHECK(is_symplectic(wd.S));
}

TEST_CASE("euler decomposition of simple symplectic matrices", "[euler]") {
  const auto id = euler_decompose(Matrix::Identity(4, 4));
  CHECK(linalg::max_abs(Matrix(id.reconstruct() - Matrix::Identity(4, 4))) < 1e-14);
  CHECK(id.m(0) == Approx(1.0));
  CHECK(id.m(1) == Approx(1.0));
  CHECK(linalg::max_abs(Matrix(id.O.transpose() * id.O - Matrix::Identity(4, 4))) < 1e-14);

  for (double r : {0.7, -0.7}) {
    Matrix S(2, 2);
    S << std::exp(r), 0, 0, std::exp(-r);
    const auto e = euler_decompose(S);
    CHECK(e.m(0) == Approx(std::exp(std::abs(r))).epsilon(1e-13));
    CHECK(linalg::max_abs(Matrix(e.reconstruct() - S)) < 1e-13);
    // orthogonal symplectic 2x2 matrices are rotations
    CHECK(e.O.determinant() == Approx(1.0));
    CHECK(e.O(0, 0) == Approx(e.O(1, 1)));
    CHECK(e.O(0, 1) == Approx(-e.O(1, 0)));
  }

  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.3;
  bad(1, 1) = 2.0;
  CHECK_THROWS_AS(euler_decompose(bad), DomainError);
}

TEST_CASE("euler round trip on random symplectic matrices", "[euler][property]") {
  testing::Rng rng(24);
  Tolerances tol;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    const Matrix S = testing::random_symplectic(n, rng, 0.5);
    const auto e = euler_decompose(S);
    const auto dim = static_cast<Eigen::Index>(2 * n);
    CHECK(linalg::max_abs(Matrix(e.reconstruct() - S)) <= tol.reconstruction * std::max(1.0, linalg::max_abs(S)));
    CHECK(linalg::max_abs(Matrix(e.O.transpose() * e.O - Matrix::Identity(dim, dim))) < 1e-9);
    CHECK(linalg::max_abs(Matrix(e.O_prime.transpose() * e.O_prime - Matrix::Identity(dim, dim))) < 1e-9);
    CHECK(is_symplectic(e.O));
    CHECK(is_symplectic(e.O_prime));
    CHECK(e.m.minCoeff() >= 1.0 - 1e-12);
    CHECK(std::is_sorted(e.m.data(), e.m.data() + e.m.size(), std::greater<>()));
  }
}

TEST_CASE("phi of simple states", "[phi]") {
  const auto vac = phi(validate(Matrix::Identity(2, 2)));
  CHECK(linalg::max_abs(Matrix(vac.Phi - Matrix::Identity(2, 2))) < 1e-14);
  CHECK(vac.K == Approx(1.0));

  // Phi = t I solves Phi - J Phi^{-1} J = 2A iff t + 1/t = 6, so t = 3 + 2 sqrt 2
  const auto th = phi(thermal_state({1.0}));
  const double t = 3.0 + 2.0 * std::sqrt(2.0);
  CHECK(th.Phi(0, 0) == Approx(t).epsilon(1e-14));
  CHECK(th.Phi(1, 1) == Approx(t).epsilon(1e-14));
  CHECK(th.Phi(0, 1) == Approx(0.0).margin(1e-14));
  CHECK(th.K == Approx(std::sqrt(t)).epsilon(1e-14));

  testing::Rng rng(25);
  for (int i = 0; i < 20; ++i) {
    const auto pure = testing::random_pure_state(1 + static_cast<std::size_t>(i % 3), rng);
    const auto p = phi(pure);
    CHECK(linalg::max_abs(Matrix(p.Phi - pure.matrix())) < 1e-7 * linalg::max_abs(pure.matrix()));
  }
}

TEST_CASE("phi satisfies its defining equation", "[phi][property]") {
  testing::Rng rng(26);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
    const auto A = testing::random_state(n, rng);
    const Matrix J = standard_form(n).J;
    const auto p = phi(A);
    const Matrix lhs = p.Phi - J * p.Phi.inverse() * J;
    CHECK(linalg::max_abs(Matrix(lhs - 2.0 * A.matrix())) <= 1e-8 * linalg::max_abs(A.matrix()));
    // K^2 = sqrt(det Phi)
    CHECK(p.K * p.K == Approx(std::sqrt(p.Phi.determinant())).epsilon(1e-10));
  }
}
