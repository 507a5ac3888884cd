#pragma once

// Correlation measures for arbitrary two-qubit density matrices:
// concurrence, entanglement of formation, mutual information, and discord
// minimized over rank-one projective measurements on one qubit.

#include <array>
#include <optional>

#include "qcorr/bell_geometry.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr {

/// Two-outcome projective measurement along the Bloch axis
/// n = (sin t cos p, sin t sin p, cos t); Pi_plus = |n><n|, Pi_minus = I - Pi_plus.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  Vec3 axis() const;
  /// 2x2 projector for outcome +1 (plus = true) or -1.
  ComplexMatrix projector(bool plus) const;
  /// Angles of a (not necessarily normalized) axis, theta in [0, pi] and
  /// phi in [0, 2 pi).
  static MeasurementBasis from_axis(const Vec3& axis);
};

struct OptimizerConfig {
  int grid_theta = 64;
  int grid_phi = 128;
  int refine_iterations = 200;
  double tolerance = 1e-8;

  /// Throws InvalidArgument unless grid_theta >= 16, grid_phi >= 32,
  /// refine_iterations >= 0 and tolerance > 0.
  void validate() const;
};

enum class ReportSource { Analytic, Numeric };

struct CorrelationReport {
  double concurrence = 0.0;
  double eof = 0.0;
  double discord = 0.0;
  std::optional<std::array<double, 3>> discord_branch_values;
  std::optional<DiscordBranch> discord_branch;
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  std::optional<RegionLabel> region;
  ReportSource source = ReportSource::Analytic;
  /// False when the discord refinement ran out of iterations.
  bool converged = true;
};

/// Hill-Wootters concurrence via the Hermitian reduction
/// sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho).
double concurrence(const DensityMatrix& rho);
double entanglement_of_formation(const DensityMatrix& rho);
/// S(rho_A) + S(rho_B) - S(rho), in bits.
double mutual_information(const DensityMatrix& rho);

/// sum_k q_k S(rho_k) where rho_k is the unmeasured qubit's state after
/// outcome k of `basis` applied on `side`. Outcomes with q_k < 1e-12 are
/// dropped.
double conditional_entropy_after_measurement(const DensityMatrix& rho,
                                             const MeasurementBasis& basis, Subsystem side);

struct NumericDiscord {
  double value;
  MeasurementBasis argmin;
  bool converged;
};

/// S(rho_side) - S(rho) + min over projective measurements on `side` of the
/// post-measurement conditional entropy. Coarse (theta, phi) grid followed
/// by a simplex refinement from the best cell.
NumericDiscord discord_numeric(const DensityMatrix& rho, Subsystem side,
                               const OptimizerConfig& cfg = {});

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// All measures from the closed forms on the Bell-diagonal family.
CorrelationReport analytic_report(const BellDiagonalState& s, double region_tol = 1e-9);

struct ReportOptions {
  OptimizerConfig optimizer;
  /// Use the general formulas even for Bell-diagonal input.
  bool force_numeric = false;
  double region_tol = 1e-9;
};

/// Analytic path when rho is recognized as Bell-diagonal (within 1e-9),
/// numeric otherwise. Numeric discord is the smaller of the two
/// measured-side values.
CorrelationReport full_report(const DensityMatrix& rho, const ReportOptions& options = {});
CorrelationReport full_report(const DensityMatrix& rho, const OptimizerConfig& cfg);

}  // namespace qcorr
