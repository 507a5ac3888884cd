#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcorr/bell_geometry.hpp"
#include "qcorr/error.hpp"
#include "qcorr/qmat.hpp"
#include "support.hpp"

using namespace qcorr;
using namespace qcorr::testing;

namespace {

ComplexMatrix diag4(double a, double b, double c, double d) {
  const double v[] = {a, b, c, d};
  return ComplexMatrix::diagonal(v);
}

DensityMatrix phi_plus() {
  const double s = 1.0 / std::numbers::sqrt2;
  const complex ket[] = {s, 0.0, 0.0, s};
  return DensityMatrix::pure(ket);
}

}  // namespace

TEST_CASE("kron of identities and basis projectors") {
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                     ComplexMatrix::identity(4)) == 0.0);
  const ComplexMatrix e00(2, {1.0, 0.0, 0.0, 0.0});
  ComplexMatrix expect(4);
  expect(0, 0) = 1.0;
  CHECK(max_abs_diff(kron(e00, e00), expect) == 0.0);
}

TEST_CASE("sigma_y x sigma_y has -1, 1, 1, -1 on the anti-diagonal") {
  const ComplexMatrix yy = kron(pauli(2), pauli(2));
  ComplexMatrix expect(4);
  expect(0, 3) = -1.0;
  expect(1, 2) = 1.0;
  expect(2, 1) = 1.0;
  expect(3, 0) = -1.0;
  CHECK(max_abs_diff(yy, expect) == 0.0);
}

TEST_CASE("kron index layout matches the definition") {
  std::mt19937_64 rng(11);
  const ComplexMatrix a = from_eigen(ginibre(rng, 2));
  const ComplexMatrix b = from_eigen(ginibre(rng, 2));
  const ComplexMatrix k = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s) CHECK(k(2 * i + r, 2 * j + s) == a(i, j) * b(r, s));
}

TEST_CASE("kron rejects results larger than 4x4") {
  CHECK_THROWS_AS(kron(ComplexMatrix::identity(4), ComplexMatrix::identity(2)), Error);
}

TEST_CASE("hermitian_eigen on simple inputs") {
  SUBCASE("identity") {
    const auto e = hermitian_eigen(ComplexMatrix::identity(4));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("diagonal input is sorted descending") {
    const auto e = hermitian_eigen(diag4(0.85, 0.0, 0.0, 0.15));
    CHECK(e.values[0] == doctest::Approx(0.85).epsilon(1e-15));
    CHECK(e.values[1] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(std::abs(e.values[2]) < 1e-15);
    CHECK(std::abs(e.values[3]) < 1e-15);
  }
  SUBCASE("Bell mixture spectrum equals its weights") {
    const auto rho = to_density_matrix(BellDiagonalState::from_probabilities({0.85, 0, 0, 0.15}));
    const auto e = hermitian_eigen(rho.matrix());
    CHECK(std::abs(e.values[0] - 0.85) < 1e-12);
    CHECK(std::abs(e.values[1] - 0.15) < 1e-12);
    CHECK(std::abs(e.values[2]) < 1e-12);
    CHECK(std::abs(e.values[3]) < 1e-12);
  }
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m(0, 1) = 1e-6;
  try {
    hermitian_eigen(m);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("random Hermitian matrices: reconstruction, orthonormality, Eigen agreement") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = trial % 4 == 0 ? 2 : 4;
    const ComplexMatrix m = random_hermitian(rng, n);
    const auto e = hermitian_eigen(m);
    const ComplexMatrix rebuilt = e.vectors * ComplexMatrix::diagonal(e.values) * e.vectors.adjoint();
    REQUIRE(max_abs_diff(rebuilt, m) <= 1e-10 * n);
    const ComplexMatrix gram = e.vectors.adjoint() * e.vectors;
    REQUIRE(max_abs_diff(gram, ComplexMatrix::identity(static_cast<std::size_t>(n))) <= 1e-10);
    for (std::size_t k = 1; k < e.values.size(); ++k) REQUIRE(e.values[k - 1] >= e.values[k]);
    const auto ref = eigen_eigenvalues(m);
    for (std::size_t k = 0; k < ref.size(); ++k) REQUIRE(std::abs(ref[k] - e.values[k]) < 1e-10);
    const auto fast = hermitian_eigenvalues(m);
    for (std::size_t k = 0; k < ref.size(); ++k) REQUIRE(std::abs(ref[k] - fast[k]) < 1e-10);
  }
}

TEST_CASE("hermitian_eigen handles degenerate spectra") {
  std::mt19937_64 rng(5);
  const ComplexMatrix u = from_eigen(random_unitary(rng, 4));
  const ComplexMatrix m = u * diag4(0.5, 0.5, 0.0, 0.0) * u.adjoint();
  const ComplexMatrix h = (m + m.adjoint()) * complex(0.5);
  const auto e = hermitian_eigen(h);
  const ComplexMatrix rebuilt = e.vectors * ComplexMatrix::diagonal(e.values) * e.vectors.adjoint();
  CHECK(max_abs_diff(rebuilt, h) < 4e-10);
  CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(4)) < 1e-10);
}

TEST_CASE("matrix_sqrt_psd") {
  CHECK(max_abs_diff(matrix_sqrt_psd(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-15);
  CHECK(max_abs_diff(matrix_sqrt_psd(diag4(4, 1, 0, 0)), diag4(2, 1, 0, 0)) < 1e-15);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const Mat a = ginibre(rng, 4);
    const ComplexMatrix m = from_eigen(0.5 * (a.adjoint() * a + (a.adjoint() * a).adjoint()));
    const ComplexMatrix s = matrix_sqrt_psd(m);
    REQUIRE(hermiticity_defect(s) < 1e-12);
    REQUIRE(max_abs_diff(s * s, m) <= 1e-9);
    REQUIRE(hermitian_eigenvalues(s).back() >= -1e-12);
  }

  try {
    matrix_sqrt_psd(diag4(1, 0, 0, -1e-3));
    FAIL("expected NegativeEigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeEigenvalue);
  }
  CHECK_NOTHROW(matrix_sqrt_psd(diag4(1, 0, 0, -1e-9)));
}

TEST_CASE("DensityMatrix validation names the violated invariant") {
  auto code_of = [](const ComplexMatrix& m) {
    try {
      DensityMatrix d(m);
    } catch (const Error& e) {
      return std::make_pair(e.code(), std::string(e.what()));
    }
    return std::make_pair(ErrorCode::ParseError, std::string("no error"));
  };
  ComplexMatrix m = diag4(0.5, 0.5, 0, 0);
  m(0, 1) = complex(0.1, 0.0);
  auto [c1, w1] = code_of(m);
  CHECK(c1 == ErrorCode::InvalidState);
  CHECK(w1.find("Hermitian") != std::string::npos);

  auto [c2, w2] = code_of(diag4(0.5, 0.5, 0.5, 0));
  CHECK(c2 == ErrorCode::InvalidState);
  CHECK(w2.find("trace") != std::string::npos);

  auto [c3, w3] = code_of(diag4(0.6, 0.6, 0, -0.2));
  CHECK(c3 == ErrorCode::InvalidState);
  CHECK(w3.find("eigenvalue") != std::string::npos);

  CHECK_NOTHROW(DensityMatrix(diag4(0.5, 0.5, 1e-10, -1e-10)));
}

TEST_CASE("partial_trace examples") {
  const ComplexMatrix half = ComplexMatrix::identity(2) * complex(0.5);
  SUBCASE("Bell-diagonal marginals are maximally mixed") {
    const auto rho = to_density_matrix(BellDiagonalState({0.3, -0.2, 0.1}));
    CHECK(max_abs_diff(partial_trace(rho, Subsystem::A).matrix(), half) < 1e-15);
    CHECK(max_abs_diff(partial_trace(rho, Subsystem::B).matrix(), half) < 1e-15);
  }
  SUBCASE("Phi+ marginal") {
    CHECK(max_abs_diff(partial_trace(phi_plus(), Subsystem::A).matrix(), half) < 1e-15);
  }
  SUBCASE("product state returns its factors") {
    std::mt19937_64 rng(3);
    const ComplexMatrix a = random_density(rng, 2);
    const ComplexMatrix b = random_density(rng, 2);
    const DensityMatrix rho(kron(a, b));
    CHECK(max_abs_diff(partial_trace(rho, Subsystem::A).matrix(), a) < 1e-14);
    CHECK(max_abs_diff(partial_trace(rho, Subsystem::B).matrix(), b) < 1e-14);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(partial_trace(DensityMatrix::maximally_mixed(2), Subsystem::A), Error);
  }
}

TEST_CASE("partial_trace is trace preserving and positive on random states") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho(random_density(rng));
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      const DensityMatrix m = partial_trace(rho, s);
      REQUIRE(std::abs(m.matrix().trace().real() - 1.0) < 1e-12);
      REQUIRE(eigen_eigenvalues(m.matrix()).back() >= -1e-12);
    }
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(von_neumann_entropy(phi_plus())) < 1e-12);
  const auto rho = to_density_matrix(BellDiagonalState::from_probabilities({0.85, 0, 0, 0.15}));
  CHECK(std::abs(von_neumann_entropy(rho) - h2(0.85)) < 1e-12);
  CHECK(std::abs(h2(0.85) - 0.60984) < 1e-5);
}

TEST_CASE("von Neumann entropy is unitarily invariant and matches Eigen") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexMatrix m = random_density(rng);
    const ComplexMatrix u = from_eigen(random_unitary(rng, 4));
    const double s = von_neumann_entropy(DensityMatrix(m));
    REQUIRE(std::abs(s - entropy_oracle(m)) < 1e-9);
    REQUIRE(std::abs(s - von_neumann_entropy(DensityMatrix(conjugate_by(u, m)))) < 1e-9);
    REQUIRE(s >= 0.0);
    REQUIRE(s <= 2.0);
  }
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(std::abs(binary_entropy(0.8571) - 0.5918) < 1e-4);
  for (double x = 0.01; x < 1.0; x += 0.01) CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1 - x)));
  CHECK_NOTHROW(binary_entropy(-1e-13));
  CHECK_NOTHROW(binary_entropy(1.0 + 1e-13));
  try {
    binary_entropy(1.01);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}
