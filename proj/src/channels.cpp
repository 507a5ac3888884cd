#include "qcorr/channels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

MixtureSpec::MixtureSpec(const Probabilities& weights, double phase_jitter)
    : phase_jitter_(phase_jitter) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorCode::InvalidArgument, "mixture weights must be finite and >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) throw Error(ErrorCode::InvalidArgument, "mixture weights sum to zero");
  if (!(phase_jitter >= 0.0) || !std::isfinite(phase_jitter))
    throw Error(ErrorCode::InvalidArgument, "phase jitter must be >= 0");
  for (std::size_t i = 0; i < 4; ++i) weights_[i] = weights[i] / sum;
}

NoiseSpec::NoiseSpec(double nu) : nu_(nu) {
  if (!(nu >= 0.0 && nu <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "noise fraction " + std::to_string(nu) + " outside [0, 1]");
}

const std::array<DensityMatrix, 4>& bell_projectors() {
  static const std::array<DensityMatrix, 4> kBell = [] {
    const double h = 1.0 / std::numbers::sqrt2;
    const std::array<complex, 4> phi_plus = {h, 0.0, 0.0, h};
    const std::array<complex, 4> phi_minus = {h, 0.0, 0.0, -h};
    const std::array<complex, 4> psi_plus = {0.0, h, h, 0.0};
    const std::array<complex, 4> psi_minus = {0.0, h, -h, 0.0};
    return std::array<DensityMatrix, 4>{DensityMatrix::pure(phi_plus),
                                        DensityMatrix::pure(phi_minus),
                                        DensityMatrix::pure(psi_plus),
                                        DensityMatrix::pure(psi_minus)};
  }();
  return kBell;
}

DensityMatrix mix_statistical(const MixtureSpec& spec) {
  const auto& bell = bell_projectors();
  ComplexMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i) m += bell[i].matrix() * complex(spec.weights()[i]);
  if (spec.phase_jitter() > 0.0) {
    // Averaging |HH> + e^{i phi}|VV> over a Gaussian phase damps the
    // HH-VV coherence; the Psi components carry none.
    const double damping = std::exp(-0.5 * spec.phase_jitter() * spec.phase_jitter());
    m(0, 3) *= damping;
    m(3, 0) *= damping;
  }
  return DensityMatrix(m);
}

DensityMatrix apply_white_noise(const DensityMatrix& rho, const NoiseSpec& noise) {
  const double nu = noise.nu();
  const double d = static_cast<double>(rho.dim());
  return DensityMatrix(rho.matrix() * complex(1.0 - nu) +
                       ComplexMatrix::identity(rho.dim()) * complex(nu / d));
}

BellDiagonalState apply_white_noise(const BellDiagonalState& s, const NoiseSpec& noise) {
  const double k = 1.0 - noise.nu();
  return BellDiagonalState::projected({k * s.c(0), k * s.c(1), k * s.c(2)});
}

BellDiagonalState bell_diagonal_scaling(const BellDiagonalState& s, const Vec3& factors) {
  for (double f : factors)
    if (!(f >= -1.0 && f <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "scaling factors must lie in [-1, 1]");
  return BellDiagonalState({factors[0] * s.c(0), factors[1] * s.c(1), factors[2] * s.c(2)});
}

Vec3 phase_flip_factors(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "phase-flip strength must lie in [0, 1]");
  const double q = 1.0 - 2.0 * gamma;
  return {q * q, q * q, 1.0};
}

}  // namespace qcorr
