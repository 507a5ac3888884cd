#include "qcorr/tomography.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

constexpr std::array<Polarization, 6> kAllPolarizations = {
    Polarization::H, Polarization::V, Polarization::D,
    Polarization::A, Polarization::R, Polarization::L};

// (1, +-n): Tr(Pi sigma_i) for the rank-one projector of one arm.
std::array<double, 4> arm_bloch(const MeasurementBasis& basis, bool plus) {
  const Vec3 n = basis.axis();
  const double s = plus ? 1.0 : -1.0;
  return {1.0, s * n[0], s * n[1], s * n[2]};
}

ProjectorSet pairs_of(std::span<const Polarization> arm, ProjectorSetName name) {
  ProjectorSet set{name, {}};
  for (Polarization a : arm)
    for (Polarization b : arm) set.projectors.push_back(TwoQubitProjector::from_polarizations(a, b));
  return set;
}

}  // namespace

std::string to_string(Polarization p) {
  switch (p) {
    case Polarization::H: return "H";
    case Polarization::V: return "V";
    case Polarization::D: return "D";
    case Polarization::A: return "A";
    case Polarization::R: return "R";
    case Polarization::L: return "L";
  }
  return "?";
}

MeasurementBasis polarization_basis(Polarization p) {
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  switch (p) {
    case Polarization::H:
    case Polarization::V: return {0.0, 0.0};
    case Polarization::D:
    case Polarization::A: return {kHalfPi, 0.0};
    case Polarization::R:
    case Polarization::L: return {kHalfPi, kHalfPi};
  }
  return {};
}

bool polarization_outcome(Polarization p) {
  return p == Polarization::H || p == Polarization::D || p == Polarization::R;
}

ComplexMatrix TwoQubitProjector::matrix() const {
  return kron(basis_a.projector(outcome[0]), basis_b.projector(outcome[1]));
}

TwoQubitProjector TwoQubitProjector::from_polarizations(Polarization a, Polarization b) {
  return {polarization_basis(a), polarization_basis(b),
          {polarization_outcome(a), polarization_outcome(b)}, to_string(a) + to_string(b)};
}

std::string to_string(ProjectorSetName name) {
  switch (name) {
    case ProjectorSetName::Minimal16: return "Minimal16";
    case ProjectorSetName::Overcomplete36: return "Overcomplete36";
    case ProjectorSetName::Custom: return "Custom";
  }
  return "?";
}

ProjectorSet ProjectorSet::minimal16() {
  constexpr std::array<Polarization, 4> kArm = {Polarization::H, Polarization::V, Polarization::D,
                                                Polarization::R};
  return pairs_of(kArm, ProjectorSetName::Minimal16);
}

ProjectorSet ProjectorSet::overcomplete36() {
  return pairs_of(kAllPolarizations, ProjectorSetName::Overcomplete36);
}

ProjectorSet ProjectorSet::custom(std::vector<TwoQubitProjector> projectors) {
  return {ProjectorSetName::Custom, std::move(projectors)};
}

ProjectorSet ProjectorSet::from_size(int size) {
  if (size == 16) return minimal16();
  if (size == 36) return overcomplete36();
  throw Error(ErrorCode::InvalidArgument, "projector set size must be 16 or 36");
}

std::int64_t sample_poisson(double mean, std::mt19937_64& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw Error(ErrorCode::InvalidArgument, "Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double u = std::generate_canonical<double, 64>(rng);
    std::int64_t k = 0;
    double term = std::exp(-mean);
    double cdf = term;
    // The cap only matters for u within rounding of 1.
    while (u > cdf && k < 1000) {
      ++k;
      term *= mean / static_cast<double>(k);
      cdf += term;
    }
    return k;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const double x = std::floor(mean + std::sqrt(mean) * normal(rng) + 0.5);
  return static_cast<std::int64_t>(std::max(x, 0.0));
}

std::mt19937_64 projector_stream(std::uint64_t seed, std::size_t index) {
  const auto idx = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> expected_counts(const DensityMatrix& truth, const ProjectorSet& set,
                                    double mean_per_projector) {
  if (truth.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "tomography needs two qubits");
  std::vector<double> out;
  out.reserve(set.projectors.size());
  for (const TwoQubitProjector& p : set.projectors) {
    const double prob = std::max((p.matrix() * truth.matrix()).trace().real(), 0.0);
    out.push_back(mean_per_projector * prob);
  }
  return out;
}

std::vector<std::int64_t> simulate_counts(const DensityMatrix& truth, const ProjectorSet& set,
                                          std::int64_t mean_per_projector, std::uint64_t seed) {
  if (mean_per_projector < 1)
    throw Error(ErrorCode::InvalidArgument, "mean_per_projector must be >= 1");
  const std::vector<double> means =
      expected_counts(truth, set, static_cast<double>(mean_per_projector));
  std::vector<std::int64_t> counts(means.size());
  for (std::size_t k = 0; k < means.size(); ++k) {
    std::mt19937_64 rng = projector_stream(seed, k);
    counts[k] = sample_poisson(means[k], rng);
  }
  return counts;
}

DensityMatrix project_to_density_matrix(const ComplexMatrix& m) {
  const EigenDecomposition eig = hermitian_eigen(m);
  std::vector<double> mu = eig.values;  // descending
  const std::size_t n = mu.size();
  double total = std::accumulate(mu.begin(), mu.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidState, "matrix has non-positive trace");
  for (double& x : mu) x /= total;

  std::vector<double> lambda(n, 0.0);
  std::size_t keep = n;
  double deficit = 0.0;
  while (keep > 0 && mu[keep - 1] + deficit / static_cast<double>(keep) < 0.0) {
    deficit += mu[keep - 1];
    --keep;
  }
  for (std::size_t j = 0; j < keep; ++j) lambda[j] = mu[j] + deficit / static_cast<double>(keep);

  ComplexMatrix rho = eig.vectors * ComplexMatrix::diagonal(lambda) * eig.vectors.adjoint();
  const double tr = rho.trace().real();
  rho = (rho + rho.adjoint()) * complex(0.5 / tr);
  return DensityMatrix(rho);
}

DensityMatrix reconstruct(std::span<const double> counts, const ProjectorSet& set,
                          double mean_per_projector) {
  const std::size_t m = set.projectors.size();
  if (counts.size() != m)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(m) + " counts, got " +
                                                std::to_string(counts.size()));
  if (!(mean_per_projector > 0.0))
    throw Error(ErrorCode::InvalidArgument, "mean_per_projector must be > 0");

  Eigen::MatrixXd design(static_cast<Eigen::Index>(m), 16);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const TwoQubitProjector& p = set.projectors[k];
    const auto a = arm_bloch(p.basis_a, p.outcome[0]);
    const auto b = arm_bloch(p.basis_b, p.outcome[1]);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        design(static_cast<Eigen::Index>(k), 4 * i + j) = 0.25 * a[i] * b[j];
    if (!(counts[k] >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative count");
    rhs(static_cast<Eigen::Index>(k)) = counts[k] / mean_per_projector;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 16)
    throw Error(ErrorCode::SingularDesign,
                "projector design has rank " + std::to_string(qr.rank()) + " < 16");
  const Eigen::VectorXd r = qr.solve(rhs);
  if (!(r(0) > 0.0)) throw Error(ErrorCode::InvalidArgument, "reconstructed trace is not positive");

  ComplexMatrix estimate(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      estimate += kron(pauli(i), pauli(j)) * complex(0.25 * r(4 * i + j) / r(0));
  return project_to_density_matrix(estimate);
}

DensityMatrix reconstruct(std::span<const std::int64_t> counts, const ProjectorSet& set,
                          std::int64_t mean_per_projector) {
  std::vector<double> as_double(counts.begin(), counts.end());
  return reconstruct(as_double, set, static_cast<double>(mean_per_projector));
}

TomographyRun run_tomography(const DensityMatrix& truth, const ProjectorSet& set,
                             std::int64_t mean_per_projector, std::uint64_t seed,
                             const TomographyOptions& options) {
  std::vector<std::int64_t> counts = simulate_counts(truth, set, mean_per_projector, seed);
  const DensityMatrix rec = reconstruct(counts, set, mean_per_projector);
  TomographyRun run{truth,
                    set.name,
                    std::move(counts),
                    mean_per_projector,
                    seed,
                    rec,
                    fidelity(truth, rec),
                    std::nullopt};
  if (options.attach_report) run.report = full_report(rec, options.report);
  return run;
}

}  // namespace qcorr
