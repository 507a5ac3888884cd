#include "qcorr/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > ComplexMatrix::kMaxDim)
    throw Error(ErrorCode::DimensionMismatch,
                "matrix dimension " + std::to_string(dim) + " outside 1..4");
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "operands have dimensions " +
                                                  std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()));
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      if (r != c) sum += std::norm(m(r, c));
  return std::sqrt(sum);
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c) sum += std::norm(m(r, c));
  return std::sqrt(sum);
}

void require_hermitian(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianInputTol))
    throw Error(ErrorCode::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(defect));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = m;
  const std::size_t n = m.dim();
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      h(r, c) = v;
      h(c, r) = std::conj(v);
    }
  }
  return h;
}

constexpr double kJacobiTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<complex> row_major)
    : dim_(dim) {
  check_dim(dim);
  if (row_major.size() != dim * dim)
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(dim * dim) + " entries, got " +
                    std::to_string(row_major.size()));
  std::copy(row_major.begin(), row_major.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const complex> ket) {
  ComplexMatrix m(ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < ket.size(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) out.a_[i] = std::conj(a_[i]);
  return out;
}

complex ComplexMatrix::trace() const {
  complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(a_[i]));
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(dim_ * dim_),
                     [](const complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] += other.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] -= other.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scale) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const complex ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

double hermiticity_defect(const ComplexMatrix& m) { return max_abs_diff(m, m.adjoint()); }

const ComplexMatrix& pauli(int i) {
  static const std::array<ComplexMatrix, 4> kPauli = {
      ComplexMatrix(2, {1.0, 0.0, 0.0, 1.0}),
      ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}),
      ComplexMatrix(2, {0.0, complex(0, -1), complex(0, 1), 0.0}),
      ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}),
  };
  if (i < 0 || i > 3) throw Error(ErrorCode::InvalidArgument, "pauli index must be 0..3");
  return kPauli[static_cast<std::size_t>(i)];
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return out;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m);
  const std::size_t n = m.dim();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(a));

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kJacobiTol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        // Phase q so the (p,q) entry is real and positive, then apply a
        // real Jacobi rotation to annihilate it.
        const complex phase = std::conj(g) / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Columns p and q of a * U, then rows p and q of U^dagger * (a * U).
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phase * akq;
          a(k, q) = s * akp + c * phase * akq;
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phase * vkq;
          v(k, q) = s * vkp + c * phase * vkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * std::conj(phase) * aqk;
          a(q, k) = s * apk + c * std::conj(phase) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.dim() != 2) return hermitian_eigen(m).values;
  require_hermitian(m);
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  return {mean + radius, mean - radius};
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  const EigenDecomposition eig = hermitian_eigen(m);
  const std::size_t n = m.dim();
  std::vector<double> roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = eig.values[i];
    if (lambda < -1e-6)
      throw Error(ErrorCode::NegativeEigenvalue, "eigenvalue " + std::to_string(lambda));
    roots[i] = std::sqrt(std::max(lambda, 0.0));
  }
  const ComplexMatrix s = eig.vectors * ComplexMatrix::diagonal(roots) * eig.vectors.adjoint();
  return hermitian_part(s);
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (m.dim() != 2 && m.dim() != 4)
    throw Error(ErrorCode::InvalidState, "density matrix must be 2x2 or 4x4");
  if (!m.is_finite()) throw Error(ErrorCode::InvalidState, "entries must be finite");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol)
    throw Error(ErrorCode::InvalidState,
                "not Hermitian (max |rho - rho^dagger| = " + std::to_string(defect) + ")");
  m_ = hermitian_part(m);
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw Error(ErrorCode::InvalidState, "trace is " + std::to_string(tr) + ", expected 1");
  const std::vector<double> ev = hermitian_eigenvalues(m_);
  if (ev.back() < -kEigenvalueTol)
    throw Error(ErrorCode::InvalidState,
                "not positive semidefinite (min eigenvalue " + std::to_string(ev.back()) + ")");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * complex(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::pure(std::span<const complex> ket) {
  double norm2 = 0.0;
  for (const complex& z : ket) norm2 += std::norm(z);
  if (!(norm2 > 0.0)) throw Error(ErrorCode::InvalidState, "zero ket");
  return DensityMatrix(ComplexMatrix::outer(ket) * complex(1.0 / norm2));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep) {
  if (m.dim() != 4)
    throw Error(ErrorCode::DimensionMismatch, "partial trace needs a 4x4 operator");
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          out(i, j) += m(2 * i + k, 2 * j + k);
        else
          out(i, j) += m(2 * k + i, 2 * k + j);
      }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  return DensityMatrix(partial_trace(rho.matrix(), keep));
}

double spectrum_entropy(std::span<const double> spectrum) {
  double s = 0.0;
  for (double lambda : spectrum) {
    const double x = std::clamp(lambda, 0.0, 1.0);
    if (x > 0.0) s -= x * std::log2(x);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const std::vector<double> ev = hermitian_eigenvalues(rho.matrix());
  return spectrum_entropy(ev);
}

double binary_entropy(double x) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
    throw Error(ErrorCode::DomainError, "binary entropy argument " + std::to_string(x));
  x = std::clamp(x, 0.0, 1.0);
  const double y = 1.0 - x;
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (y > 0.0) h -= y * std::log2(y);
  return h;
}

}  // namespace qcorr
