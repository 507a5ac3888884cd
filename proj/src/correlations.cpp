#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/simplex.hpp"

namespace qcorr {

namespace {

constexpr double kMinOutcomeProbability = 1e-12;

// Pauli expansion rho = 1/4 sum_ij R_ij s_i x s_j, split into the local
// Bloch vectors and the correlation block. `measured` holds the Bloch
// vector of the measured qubit, `other` that of the unmeasured one, and
// corr(i, j) pairs the unmeasured index i with the measured index j.
struct BlochForm {
  Vec3 measured;
  Vec3 other;
  std::array<std::array<double, 3>, 3> corr;
};

BlochForm bloch_form(const DensityMatrix& rho, Subsystem measured_side) {
  std::array<std::array<double, 4>, 4> r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = (rho.matrix() * kron(pauli(i), pauli(j))).trace().real();

  BlochForm f{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (measured_side == Subsystem::B) {
      f.measured[k] = r[0][k + 1];
      f.other[k] = r[k + 1][0];
    } else {
      f.measured[k] = r[k + 1][0];
      f.other[k] = r[0][k + 1];
    }
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      f.corr[i][j] = measured_side == Subsystem::B ? r[i + 1][j + 1] : r[j + 1][i + 1];
  return f;
}

// Post-measurement conditional entropy in Bloch form: outcome +-1 along n
// occurs with q = (1 +- m.n)/2 and leaves the other qubit with Bloch vector
// (o +- T n) / (1 +- m.n).
double bloch_conditional_entropy(const BlochForm& f, const Vec3& n) {
  double mn = 0.0;
  Vec3 tn{};
  for (std::size_t i = 0; i < 3; ++i) {
    mn += f.measured[i] * n[i];
    for (std::size_t j = 0; j < 3; ++j) tn[i] += f.corr[i][j] * n[j];
  }
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double q = 0.5 * (1.0 + sign * mn);
    if (q < kMinOutcomeProbability) continue;
    double len2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double v = f.other[i] + sign * tn[i];
      len2 += v * v;
    }
    const double radius = std::min(std::sqrt(len2) / (2.0 * q), 1.0);
    total += q * binary_entropy(0.5 * (1.0 + radius));
  }
  return total;
}

Vec3 axis_of(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Subsystem other_side(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }

}  // namespace

Vec3 MeasurementBasis::axis() const { return axis_of(theta, phi); }

ComplexMatrix MeasurementBasis::projector(bool plus) const {
  const std::array<complex, 2> ket = {std::cos(0.5 * theta),
                                      std::polar(std::sin(0.5 * theta), phi)};
  const ComplexMatrix p = ComplexMatrix::outer(ket);
  return plus ? p : ComplexMatrix::identity(2) - p;
}

MeasurementBasis MeasurementBasis::from_axis(const Vec3& axis) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero measurement axis");
  const double theta = std::acos(std::clamp(axis[2] / norm, -1.0, 1.0));
  double phi = std::atan2(axis[1], axis[0]);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return {theta, phi};
}

void OptimizerConfig::validate() const {
  if (grid_theta < 16) throw Error(ErrorCode::InvalidArgument, "grid_theta must be >= 16");
  if (grid_phi < 32) throw Error(ErrorCode::InvalidArgument, "grid_phi must be >= 32");
  if (refine_iterations < 0)
    throw Error(ErrorCode::InvalidArgument, "refine_iterations must be >= 0");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "concurrence needs two qubits");
  const ComplexMatrix yy = kron(pauli(2), pauli(2));
  const ComplexMatrix root = matrix_sqrt_psd(rho.matrix());
  const ComplexMatrix spin_flipped = yy * rho.matrix().conjugate() * yy;
  const ComplexMatrix reduced = root * spin_flipped * root;
  // Exact Hermitian symmetrization of a product that is Hermitian in theory.
  const ComplexMatrix sym = (reduced + reduced.adjoint()) * complex(0.5);
  std::vector<double> lambda = hermitian_eigenvalues(sym);
  double c = std::sqrt(std::max(lambda[0], 0.0));
  for (std::size_t i = 1; i < lambda.size(); ++i) c -= std::sqrt(std::max(lambda[i], 0.0));
  return std::clamp(c, 0.0, 1.0);
}

double entanglement_of_formation(const DensityMatrix& rho) {
  return entanglement_from_concurrence(concurrence(rho));
}

double mutual_information(const DensityMatrix& rho) {
  const double i = von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
                   von_neumann_entropy(partial_trace(rho, Subsystem::B)) -
                   von_neumann_entropy(rho);
  return std::max(i, 0.0);
}

double conditional_entropy_after_measurement(const DensityMatrix& rho,
                                             const MeasurementBasis& basis, Subsystem side) {
  if (rho.dim() != 4)
    throw Error(ErrorCode::DimensionMismatch, "measurement needs a two-qubit state");
  const ComplexMatrix id = ComplexMatrix::identity(2);
  double total = 0.0;
  for (bool plus : {true, false}) {
    const ComplexMatrix local = basis.projector(plus);
    const ComplexMatrix proj = side == Subsystem::B ? kron(id, local) : kron(local, id);
    const ComplexMatrix post = proj * rho.matrix() * proj;
    const double q = post.trace().real();
    if (q < kMinOutcomeProbability) continue;
    const ComplexMatrix cond = partial_trace(post, other_side(side)) * complex(1.0 / q);
    const std::vector<double> ev = hermitian_eigenvalues((cond + cond.adjoint()) * complex(0.5));
    total += q * spectrum_entropy(ev);
  }
  return total;
}

NumericDiscord discord_numeric(const DensityMatrix& rho, Subsystem side,
                               const OptimizerConfig& cfg) {
  cfg.validate();
  if (rho.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "discord needs two qubits");
  const BlochForm form = bloch_form(rho, side);
  auto objective = [&form](const Point2& x) {
    return bloch_conditional_entropy(form, axis_of(x[0], x[1]));
  };

  const double dtheta = std::numbers::pi / (cfg.grid_theta - 1);
  const double dphi = 2.0 * std::numbers::pi / cfg.grid_phi;
  Point2 best{0.0, 0.0};
  double best_value = objective(best);
  for (int i = 0; i < cfg.grid_theta; ++i) {
    for (int j = 0; j < cfg.grid_phi; ++j) {
      const Point2 x{i * dtheta, j * dphi};
      const double v = objective(x);
      if (v < best_value) {
        best_value = v;
        best = x;
      }
    }
  }

  bool converged = true;
  if (cfg.refine_iterations > 0) {
    const SimplexResult refined =
        minimize_simplex(objective, best, {dtheta, dphi}, cfg.refine_iterations, cfg.tolerance);
    converged = refined.converged;
    if (refined.value < best_value) {
      best_value = refined.value;
      best = refined.point;
    }
  }

  const double entropy_gap =
      von_neumann_entropy(partial_trace(rho, side)) - von_neumann_entropy(rho);
  return {std::max(entropy_gap + best_value, 0.0),
          MeasurementBasis::from_axis(axis_of(best[0], best[1])), converged};
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw Error(ErrorCode::DimensionMismatch, "fidelity operands differ in dimension");
  const ComplexMatrix root = matrix_sqrt_psd(rho.matrix());
  const ComplexMatrix inner = root * sigma.matrix() * root;
  const std::vector<double> ev = hermitian_eigenvalues((inner + inner.adjoint()) * complex(0.5));
  double tr = 0.0;
  for (double lambda : ev) tr += std::sqrt(std::max(lambda, 0.0));
  return std::clamp(tr * tr, 0.0, 1.0);
}

CorrelationReport analytic_report(const BellDiagonalState& s, double region_tol) {
  const LuoDiscord luo = discord_luo(s);
  CorrelationReport r;
  r.concurrence = concurrence_bd(s);
  r.eof = entanglement_from_concurrence(r.concurrence);
  r.discord = luo.value;
  r.discord_branch_values = luo.branch_values;
  r.discord_branch = luo.branch;
  r.mutual_information = mutual_information_bd(s);
  r.classical_correlation = r.mutual_information - r.discord;
  r.region = classify_region(s, region_tol);
  r.source = ReportSource::Analytic;
  return r;
}

CorrelationReport full_report(const DensityMatrix& rho, const ReportOptions& options) {
  const std::optional<BellDiagonalState> bell = BellDiagonalState::from_density_matrix(rho);
  if (bell && !options.force_numeric) return analytic_report(*bell, options.region_tol);

  const NumericDiscord on_a = discord_numeric(rho, Subsystem::A, options.optimizer);
  const NumericDiscord on_b = discord_numeric(rho, Subsystem::B, options.optimizer);

  CorrelationReport r;
  r.concurrence = concurrence(rho);
  r.eof = entanglement_from_concurrence(r.concurrence);
  r.discord = std::min(on_a.value, on_b.value);
  r.mutual_information = mutual_information(rho);
  r.classical_correlation = r.mutual_information - r.discord;
  if (bell) r.region = classify_region(*bell, options.region_tol);
  r.source = ReportSource::Numeric;
  r.converged = on_a.converged && on_b.converged;
  return r;
}

CorrelationReport full_report(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  ReportOptions options;
  options.optimizer = cfg;
  return full_report(rho, options);
}

}  // namespace qcorr
