#pragma once

// Synthetic two-qubit polarization tomography: Poisson coincidence counts
// for a set of product projectors, linear-inversion reconstruction with a
// projection onto physical states, and fidelity scoring.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr {

enum class Polarization { H, V, D, A, R, L };
std::string to_string(Polarization p);

/// Measurement basis and outcome sign realizing a polarization filter:
/// H/V along z, D/A along x, R/L along y.
MeasurementBasis polarization_basis(Polarization p);
bool polarization_outcome(Polarization p);

struct TwoQubitProjector {
  MeasurementBasis basis_a;
  MeasurementBasis basis_b;
  /// Outcome signs (true = +1) on arms A and B.
  std::array<bool, 2> outcome;
  std::string label;

  ComplexMatrix matrix() const;
  static TwoQubitProjector from_polarizations(Polarization a, Polarization b);
};

enum class ProjectorSetName { Minimal16, Overcomplete36, Custom };
std::string to_string(ProjectorSetName name);

struct ProjectorSet {
  ProjectorSetName name;
  std::vector<TwoQubitProjector> projectors;

  /// All pairs from {H, V, D, R}.
  static ProjectorSet minimal16();
  /// All pairs from {H, V, D, A, R, L}.
  static ProjectorSet overcomplete36();
  static ProjectorSet custom(std::vector<TwoQubitProjector> projectors);
  /// 16 -> Minimal16, 36 -> Overcomplete36.
  static ProjectorSet from_size(int size);
};

/// Poisson sampling: inverse transform below a mean of 30, otherwise the
/// normal approximation floor(mean + sqrt(mean) z + 1/2), clipped at 0.
std::int64_t sample_poisson(double mean, std::mt19937_64& rng);

/// Engine for projector `index` under `seed`; each projector draws from its
/// own substream so results do not depend on evaluation order.
std::mt19937_64 projector_stream(std::uint64_t seed, std::size_t index);

/// Noise-free expectation mean * Tr(Pi_k rho) for every projector.
std::vector<double> expected_counts(const DensityMatrix& truth, const ProjectorSet& set,
                                    double mean_per_projector);

std::vector<std::int64_t> simulate_counts(const DensityMatrix& truth, const ProjectorSet& set,
                                          std::int64_t mean_per_projector, std::uint64_t seed);

/// Least-squares inversion of Tr(Pi_k rho) = count_k / mean in the Pauli
/// basis, rescaled to unit trace, then projected onto the closest density
/// matrix with the same eigenvectors (negative eigenvalues zeroed and their
/// weight spread over the rest). Throws SingularDesign when the projectors
/// do not determine the state.
DensityMatrix reconstruct(std::span<const double> counts, const ProjectorSet& set,
                          double mean_per_projector);
DensityMatrix reconstruct(std::span<const std::int64_t> counts, const ProjectorSet& set,
                          std::int64_t mean_per_projector);

/// Projection of a unit-trace Hermitian matrix onto density matrices.
DensityMatrix project_to_density_matrix(const ComplexMatrix& m);

struct TomographyRun {
  DensityMatrix truth;
  ProjectorSetName set;
  std::vector<std::int64_t> counts;
  std::int64_t mean_per_projector;
  std::uint64_t seed;
  DensityMatrix reconstructed;
  double fidelity;
  std::optional<CorrelationReport> report;
};

struct TomographyOptions {
  bool attach_report = true;
  ReportOptions report;
};

/// simulate_counts -> reconstruct -> fidelity, plus the correlation report
/// of the reconstructed matrix (numeric unless it is exactly Bell-diagonal).
TomographyRun run_tomography(const DensityMatrix& truth, const ProjectorSet& set,
                             std::int64_t mean_per_projector, std::uint64_t seed,
                             const TomographyOptions& options = {});

}  // namespace qcorr
