#pragma once

// Shared helpers for the test programs: seeded random states and
// independent reference computations built on Eigen.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qcorr/bell_geometry.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr::testing {

using Mat = Eigen::MatrixXcd;

inline Mat to_eigen(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return out;
}

inline ComplexMatrix from_eigen(const Mat& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

inline Mat ginibre(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  return a;
}

/// Haar-distributed unitary from the QR of a Ginibre matrix.
inline Mat random_unitary(std::mt19937_64& rng, int n) {
  const Mat a = ginibre(rng, n);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

/// Random full-rank density matrix G G^dagger / Tr.
inline ComplexMatrix random_density(std::mt19937_64& rng, int n = 4) {
  const Mat a = ginibre(rng, n);
  Mat rho = a * a.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return from_eigen(rho);
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
  const Mat a = ginibre(rng, n);
  return from_eigen(0.5 * (a + a.adjoint()));
}

/// Uniform point of the Bell-diagonal simplex (flat Dirichlet weights).
inline Probabilities random_probabilities(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Probabilities p{};
  double s = 0.0;
  for (double& x : p) {
    x = e(rng);
    s += x;
  }
  for (double& x : p) x /= s;
  return p;
}

inline BellDiagonalState random_bell(std::mt19937_64& rng) {
  return BellDiagonalState::from_probabilities(random_probabilities(rng));
}

/// Local unitary U (x) V.
inline ComplexMatrix random_local_unitary(std::mt19937_64& rng) {
  const Mat u = random_unitary(rng, 2);
  const Mat v = random_unitary(rng, 2);
  Mat k(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = u(i, j) * v;
  return from_eigen(k);
}

inline ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  const Mat r = to_eigen(u) * to_eigen(m) * to_eigen(u).adjoint();
  return from_eigen(0.5 * (r + r.adjoint()));
}

inline std::vector<double> eigen_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(to_eigen(m));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

inline double entropy_oracle(const ComplexMatrix& m) {
  double s = 0.0;
  for (double l : eigen_eigenvalues(m)) s -= xlog2x(std::max(l, 0.0));
  return s;
}

inline double h2(double x) { return -xlog2x(x) - xlog2x(1.0 - x); }

/// Wootters concurrence from the eigenvalues of the non-Hermitian
/// R = rho (sy x sy) rho* (sy x sy).
inline double concurrence_oracle(const ComplexMatrix& rho) {
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Mat r = to_eigen(rho);
  const Mat big_r = r * yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(big_r);
  std::vector<double> s;
  for (int i = 0; i < 4; ++i) s.push_back(std::sqrt(std::max(es.eigenvalues()(i).real(), 0.0)));
  std::sort(s.rbegin(), s.rend());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

/// Luo discord straight from the branch formula
/// D_i = sum_k p_k log2(4 p_k) - [(1 - c_i) log2(1 - c_i) + (1 + c_i) log2(1 + c_i)] / 2.
inline std::array<double, 3> luo_branches_oracle(const Vec3& c) {
  const double p[4] = {(1 + c[0] - c[1] + c[2]) / 4, (1 - c[0] + c[1] + c[2]) / 4,
                       (1 + c[0] + c[1] - c[2]) / 4, (1 - c[0] - c[1] - c[2]) / 4};
  double base = 0.0;
  for (double x : p) base += x > 0.0 ? x * std::log2(4.0 * x) : 0.0;
  std::array<double, 3> d{};
  for (int i = 0; i < 3; ++i) d[i] = base - 0.5 * (xlog2x(1.0 - c[i]) + xlog2x(1.0 + c[i]));
  return d;
}

inline double luo_oracle(const Vec3& c) {
  const auto d = luo_branches_oracle(c);
  return std::min({d[0], d[1], d[2]});
}

/// Concurrence to entanglement of formation.
inline double eof_oracle(double c) { return h2(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)))); }

}  // namespace qcorr::testing
