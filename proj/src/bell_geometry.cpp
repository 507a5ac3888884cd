#include "qcorr/bell_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

std::string format_c(const Vec3& c) {
  std::ostringstream os;
  os.precision(12);
  os << "(" << c[0] << ", " << c[1] << ", " << c[2] << ")";
  return os.str();
}

// Euclidean projection onto the probability simplex.
Probabilities project_to_simplex(const Probabilities& p) {
  Probabilities u = p;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, shift = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) shift = candidate;
  }
  Probabilities out;
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = std::max(p[i] - shift, 0.0);
  return out;
}

// (x + y) * (1 - H(x / (x + y))); one pair's share of a Luo branch.
double pair_term(double x, double y) {
  x = std::max(x, 0.0);
  y = std::max(y, 0.0);
  const double total = x + y;
  if (total <= 0.0) return 0.0;
  return total * (1.0 - binary_entropy(x / total));
}

}  // namespace

Probabilities probabilities_from_c(const Vec3& c) {
  const double c1 = c[0], c2 = c[1], c3 = c[2];
  return {(1.0 + c1 - c2 + c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0, (1.0 + c1 + c2 - c3) / 4.0,
          (1.0 - c1 - c2 - c3) / 4.0};
}

Vec3 c_from_probabilities(const Probabilities& p) {
  return {p[0] - p[1] + p[2] - p[3], -p[0] + p[1] + p[2] - p[3], p[0] + p[1] - p[2] - p[3]};
}

bool in_tetrahedron(const Vec3& c, double slack) {
  const Probabilities p = probabilities_from_c(c);
  return std::all_of(p.begin(), p.end(), [slack](double x) { return x >= -slack; });
}

BellDiagonalState::BellDiagonalState(const Vec3& c) : c_(c) {
  if (!std::all_of(c.begin(), c.end(), [](double x) { return std::isfinite(x); }))
    throw Error(ErrorCode::OutOfTetrahedron, "non-finite coordinates");
  if (!in_tetrahedron(c, kProbabilityTol))
    throw Error(ErrorCode::OutOfTetrahedron, "point " + format_c(c) + " has a negative weight");
}

BellDiagonalState BellDiagonalState::from_probabilities(const Probabilities& p) {
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -kProbabilityTol)
      throw Error(ErrorCode::InvalidProbabilities, "negative or non-finite weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidProbabilities, "weights sum to " + std::to_string(sum));
  Probabilities q;
  for (std::size_t i = 0; i < 4; ++i) q[i] = std::max(p[i], 0.0) / sum;
  return BellDiagonalState(c_from_probabilities(q), Unchecked{});
}

BellDiagonalState BellDiagonalState::projected(const Vec3& c, double slack) {
  if (!std::all_of(c.begin(), c.end(), [](double x) { return std::isfinite(x); }))
    throw Error(ErrorCode::OutOfTetrahedron, "non-finite coordinates");
  if (in_tetrahedron(c, kProbabilityTol)) return BellDiagonalState(c, Unchecked{});
  if (!in_tetrahedron(c, slack))
    throw Error(ErrorCode::OutOfTetrahedron, "point " + format_c(c) + " lies outside");
  return BellDiagonalState(c_from_probabilities(project_to_simplex(probabilities_from_c(c))),
                           Unchecked{});
}

std::optional<BellDiagonalState> BellDiagonalState::from_density_matrix(const DensityMatrix& rho,
                                                                       double tol) {
  if (rho.dim() != 4) return std::nullopt;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      if (r == c || r + c == 3) continue;
      if (std::abs(rho(r, c)) > tol) return std::nullopt;
    }
  if (std::abs(rho(0, 3).imag()) > tol || std::abs(rho(1, 2).imag()) > tol) return std::nullopt;
  if (std::abs(rho(0, 0) - rho(3, 3)) > tol || std::abs(rho(1, 1) - rho(2, 2)) > tol)
    return std::nullopt;

  Vec3 c;
  for (int i = 1; i <= 3; ++i) {
    const ComplexMatrix corr = rho.matrix() * kron(pauli(i), pauli(i));
    c[static_cast<std::size_t>(i - 1)] = corr.trace().real();
  }
  return projected(c);
}

DensityMatrix to_density_matrix(const BellDiagonalState& s) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int i = 1; i <= 3; ++i) m += kron(pauli(i), pauli(i)) * complex(s.c(i - 1));
  return DensityMatrix(m * complex(0.25));
}

std::string to_string(EntanglementRegion r) {
  switch (r) {
    case EntanglementRegion::SeparableOctahedron: return "SeparableOctahedron";
    case EntanglementRegion::Tau1: return "Tau1";
    case EntanglementRegion::Tau2: return "Tau2";
    case EntanglementRegion::Tau3: return "Tau3";
    case EntanglementRegion::Tau4: return "Tau4";
    case EntanglementRegion::OctahedronBoundary: return "OctahedronBoundary";
  }
  return "?";
}

std::string to_string(DiscordBranch b) { return "D" + std::to_string(branch_index(b) + 1); }

std::string to_string(BranchPlane p) {
  switch (p) {
    case BranchPlane::C1C2: return "|c1|=|c2|";
    case BranchPlane::C2C3: return "|c2|=|c3|";
    case BranchPlane::C3C1: return "|c3|=|c1|";
  }
  return "?";
}

RegionLabel classify_region(const BellDiagonalState& s, double tol) {
  const Probabilities p = s.probabilities();
  const auto max_it = std::max_element(p.begin(), p.end());
  const double p_max = *max_it;
  const double p_min = *std::min_element(p.begin(), p.end());

  RegionLabel label{};
  if (p_max > 0.5 + tol) {
    static constexpr std::array<EntanglementRegion, 4> kTau = {
        EntanglementRegion::Tau1, EntanglementRegion::Tau2, EntanglementRegion::Tau3,
        EntanglementRegion::Tau4};
    label.entanglement_region = kTau[static_cast<std::size_t>(max_it - p.begin())];
  } else if (std::abs(p_max - 0.5) <= tol || p_min <= tol) {
    label.entanglement_region = EntanglementRegion::OctahedronBoundary;
  } else {
    label.entanglement_region = EntanglementRegion::SeparableOctahedron;
  }

  const Vec3 a = {std::abs(s.c(0)), std::abs(s.c(1)), std::abs(s.c(2))};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (a[i] > a[best] + tol) best = i;
  label.discord_branch = static_cast<DiscordBranch>(best);

  if (std::abs(a[0] - a[1]) <= tol) label.on_branch_boundary.push_back(BranchPlane::C1C2);
  if (std::abs(a[1] - a[2]) <= tol) label.on_branch_boundary.push_back(BranchPlane::C2C3);
  if (std::abs(a[2] - a[0]) <= tol) label.on_branch_boundary.push_back(BranchPlane::C3C1);
  return label;
}

double octahedron_distance(const BellDiagonalState& s) {
  const double l1 = std::abs(s.c(0)) + std::abs(s.c(1)) + std::abs(s.c(2));
  return (1.0 - l1) / std::sqrt(3.0);
}

std::array<double, 3> branch_plane_distances(const BellDiagonalState& s) {
  const Vec3 a = {std::abs(s.c(0)), std::abs(s.c(1)), std::abs(s.c(2))};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {std::abs(a[0] - a[1]) * inv_sqrt2, std::abs(a[1] - a[2]) * inv_sqrt2,
          std::abs(a[2] - a[0]) * inv_sqrt2};
}

double entanglement_from_concurrence(double concurrence) {
  const double c = std::clamp(concurrence, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double concurrence_bd(const BellDiagonalState& s) {
  const Probabilities p = s.probabilities();
  const double p_max = *std::max_element(p.begin(), p.end());
  return std::clamp(2.0 * p_max - 1.0, 0.0, 1.0);
}

double eof_bd(const BellDiagonalState& s) { return entanglement_from_concurrence(concurrence_bd(s)); }

LuoDiscord discord_luo(const BellDiagonalState& s) {
  const Probabilities p = s.probabilities();
  // Each branch regroups sum_k p_k log2(4 p_k) - [(1-c_i)log2(1-c_i) +
  // (1+c_i)log2(1+c_i)]/2 by the two weight pairs that sum to (1 +- c_i)/2.
  // The regrouping is exact algebra and keeps every term non-negative.
  const std::array<double, 3> d = {
      pair_term(p[0], p[2]) + pair_term(p[1], p[3]),
      pair_term(p[1], p[2]) + pair_term(p[0], p[3]),
      pair_term(p[0], p[1]) + pair_term(p[2], p[3]),
  };
  const double d_min = *std::min_element(d.begin(), d.end());

  constexpr double kTie = 1e-12;
  std::size_t best = 3;
  for (std::size_t i = 0; i < 3; ++i) {
    if (d[i] > d_min + kTie) continue;
    if (best == 3 || std::abs(s.c()[i]) > std::abs(s.c()[best]) + kTie) best = i;
  }
  return {std::clamp(d_min, 0.0, 1.0), static_cast<DiscordBranch>(best), d};
}

double mutual_information_bd(const BellDiagonalState& s) {
  const Probabilities p = s.probabilities();
  return std::max(0.0, 2.0 - spectrum_entropy(p));
}

double classical_correlation_bd(const BellDiagonalState& s) {
  return mutual_information_bd(s) - discord_luo(s).value;
}

}  // namespace qcorr
