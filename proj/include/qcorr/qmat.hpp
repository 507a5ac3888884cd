#pragma once

// Dense complex linear algebra for one- and two-qubit operators.
//
// Matrices are stored inline (at most 4x4), so every value here is cheap to
// copy and free of heap traffic. All functions are pure.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcorr {

using complex = std::complex<double>;

class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  ComplexMatrix() = default;
  /// Zero matrix of the given dimension (1..4).
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; the list length must be dim*dim.
  ComplexMatrix(std::size_t dim, std::initializer_list<complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |v><v| for an (unnormalized) ket.
  static ComplexMatrix outer(std::span<const complex> ket);

  std::size_t dim() const noexcept { return dim_; }

  complex& operator()(std::size_t row, std::size_t col) noexcept { return a_[row * dim_ + col]; }
  const complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return a_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  complex trace() const;
  /// Largest absolute entry.
  double max_abs() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::array<complex, kMaxDim * kMaxDim> a_{};
};

/// Largest absolute entry of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest absolute entry of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

/// Pauli matrix sigma_i, i = 0 (identity), 1 (x), 2 (y), 3 (z).
const ComplexMatrix& pauli(int i);

/// Kronecker product; the result dimension must not exceed 4.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, matching `values`
};

inline constexpr double kHermitianInputTol = 1e-8;

/// Cyclic complex Jacobi diagonalization. Throws NotHermitian when
/// m deviates from m^dagger by more than kHermitianInputTol.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);

/// Eigenvalues only, descending. Uses the closed form for 2x2 input.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Principal square root of a Hermitian positive-semidefinite matrix.
/// Eigenvalues in [-1e-6, 0) are clipped to zero; anything below that
/// raises NegativeEigenvalue.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

/// A validated density operator: Hermitian, unit trace, positive
/// semidefinite (see the tolerances below). The stored matrix is exactly
/// Hermitian.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kEigenvalueTol = 1e-9;

  /// Throws InvalidState naming the violated invariant.
  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  /// Pure state from a ket; the ket is normalized first.
  static DensityMatrix pure(std::span<const complex> ket);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  const complex& operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

enum class Subsystem { A, B };

/// Partial trace of a 4x4 operator keeping one qubit. No normalization.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep);
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// -sum x log2 x over a spectrum, clipping each value to [0, 1].
double spectrum_entropy(std::span<const double> spectrum);
/// Entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);
/// H(x) in bits; x may stray outside [0, 1] by at most 1e-12.
double binary_entropy(double x);

}  // namespace qcorr
