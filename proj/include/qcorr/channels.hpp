#pragma once

// State preparation by statistical mixing of Bell states, and the noise
// models applied to prepared states.

#include <array>

#include "qcorr/bell_geometry.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr {

/// Acquisition-time fractions for |Phi+>, |Phi->, |Psi+>, |Psi->, plus the
/// standard deviation (radians) of the pump phase during the |Phi+-> runs.
class MixtureSpec {
 public:
  /// Weights must be >= 0 with a positive sum; they are normalized here.
  explicit MixtureSpec(const Probabilities& weights, double phase_jitter = 0.0);

  const Probabilities& weights() const noexcept { return weights_; }
  double phase_jitter() const noexcept { return phase_jitter_; }

 private:
  Probabilities weights_;
  double phase_jitter_;
};

/// White-noise admixture fraction nu in [0, 1].
class NoiseSpec {
 public:
  explicit NoiseSpec(double nu);
  double nu() const noexcept { return nu_; }

 private:
  double nu_;
};

/// The four Bell projectors in the order Phi+, Phi-, Psi+, Psi-.
const std::array<DensityMatrix, 4>& bell_projectors();

/// sum_i w_i |B_i><B_i|. Phase jitter s multiplies the |00><11| coherences
/// contributed by the Phi+- components by exp(-s^2 / 2).
DensityMatrix mix_statistical(const MixtureSpec& spec);

/// (1 - nu) rho + nu I/d.
DensityMatrix apply_white_noise(const DensityMatrix& rho, const NoiseSpec& noise);
/// Same channel on the Bell-diagonal family: c -> (1 - nu) c.
BellDiagonalState apply_white_noise(const BellDiagonalState& s, const NoiseSpec& noise);

/// c_i -> f_i c_i with f_i in [-1, 1]. Throws OutOfTetrahedron if the image
/// leaves the state space.
BellDiagonalState bell_diagonal_scaling(const BellDiagonalState& s, const Vec3& factors);

/// Scaling factors of a phase-flip channel of strength gamma acting on both
/// qubits: q^2 on the two axes transverse to z, 1 on z, with q = 1 - 2 gamma.
Vec3 phase_flip_factors(double gamma);

}  // namespace qcorr
