#pragma once

// Bell-diagonal two-qubit states in correlation coordinates (c1, c2, c3),
// the geometry of their tetrahedron, and the closed-form correlation
// measures that hold on this family.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/qmat.hpp"

namespace qcorr {

using Vec3 = std::array<double, 3>;
using Probabilities = std::array<double, 4>;

/// Weights of |Phi+>, |Phi->, |Psi+>, |Psi-> for the given coordinates.
Probabilities probabilities_from_c(const Vec3& c);
/// Inverse of probabilities_from_c (no validation).
Vec3 c_from_probabilities(const Probabilities& p);

namespace tetrahedron {
inline constexpr std::array<Vec3, 4> kVertices = {{
    {1.0, -1.0, 1.0},    // |Phi+>
    {-1.0, 1.0, 1.0},    // |Phi->
    {1.0, 1.0, -1.0},    // |Psi+>
    {-1.0, -1.0, -1.0},  // |Psi->
}};
/// Face centres o1..o4: o1 faces v1v2v3, o2 faces v1v2v4, o3 faces v2v3v4,
/// o4 faces v1v3v4.
inline constexpr std::array<Vec3, 4> kFaceCenters = {{
    {1.0 / 3, 1.0 / 3, 1.0 / 3},
    {-1.0 / 3, -1.0 / 3, 1.0 / 3},
    {-1.0 / 3, 1.0 / 3, -1.0 / 3},
    {1.0 / 3, -1.0 / 3, -1.0 / 3},
}};
}  // namespace tetrahedron

/// True when every derived probability is >= -slack.
bool in_tetrahedron(const Vec3& c, double slack = 1e-12);

class BellDiagonalState {
 public:
  static constexpr double kProbabilityTol = 1e-12;
  static constexpr double kProjectionSlack = 1e-9;

  /// Throws OutOfTetrahedron unless all p_i >= -1e-12.
  explicit BellDiagonalState(const Vec3& c);

  /// Accepts p_i >= -1e-12 with |sum - 1| <= 1e-9 and renormalizes.
  static BellDiagonalState from_probabilities(const Probabilities& p);

  /// Accepts points up to `slack` outside the tetrahedron (in p) and maps
  /// them to the nearest tetrahedron point.
  static BellDiagonalState projected(const Vec3& c, double slack = kProjectionSlack);

  /// Recognizes a Bell-diagonal operator: off-diagonal entries off the
  /// anti-diagonal below tol, real anti-diagonal, rho00 = rho33 and
  /// rho11 = rho22 within tol. Returns the coordinates if it matches.
  static std::optional<BellDiagonalState> from_density_matrix(const DensityMatrix& rho,
                                                             double tol = 1e-9);

  const Vec3& c() const noexcept { return c_; }
  double c(int i) const { return c_.at(static_cast<std::size_t>(i)); }
  Probabilities probabilities() const { return probabilities_from_c(c_); }

 private:
  struct Unchecked {};
  BellDiagonalState(const Vec3& c, Unchecked) : c_(c) {}

  Vec3 c_;
};

DensityMatrix to_density_matrix(const BellDiagonalState& s);

enum class EntanglementRegion { SeparableOctahedron, Tau1, Tau2, Tau3, Tau4, OctahedronBoundary };
enum class DiscordBranch { D1 = 0, D2 = 1, D3 = 2 };
/// Diagonal planes |c1|=|c2|, |c2|=|c3|, |c3|=|c1|.
enum class BranchPlane { C1C2, C2C3, C3C1 };

std::string to_string(EntanglementRegion r);
std::string to_string(DiscordBranch b);
std::string to_string(BranchPlane p);
inline int branch_index(DiscordBranch b) { return static_cast<int>(b); }

struct RegionLabel {
  EntanglementRegion entanglement_region;
  DiscordBranch discord_branch;
  std::vector<BranchPlane> on_branch_boundary;
};

/// Tau_i when p_i > 1/2 + tol; OctahedronBoundary when the state sits on a
/// face of the separable octahedron (max p within tol of 1/2, or min p
/// within tol of 0); SeparableOctahedron otherwise. The discord branch is the
/// index of the largest |c_i|, lowest index among ties.
RegionLabel classify_region(const BellDiagonalState& s, double tol = 1e-9);

/// (1 - |c1| - |c2| - |c3|) / sqrt(3): signed distance to the nearest face
/// plane of the octahedron, positive inside.
double octahedron_distance(const BellDiagonalState& s);
/// Euclidean distances to the planes |c1|=|c2|, |c2|=|c3|, |c3|=|c1|.
std::array<double, 3> branch_plane_distances(const BellDiagonalState& s);

/// E = H((1 + sqrt(1 - C^2)) / 2).
double entanglement_from_concurrence(double concurrence);

double concurrence_bd(const BellDiagonalState& s);
double eof_bd(const BellDiagonalState& s);

struct LuoDiscord {
  double value;
  DiscordBranch branch;
  std::array<double, 3> branch_values;
};

/// D = min(D1, D2, D3). Ties between branches go to the largest |c_i|,
/// then the lowest index.
LuoDiscord discord_luo(const BellDiagonalState& s);

/// I = 2 - S(rho); both marginals are maximally mixed.
double mutual_information_bd(const BellDiagonalState& s);
double classical_correlation_bd(const BellDiagonalState& s);

}  // namespace qcorr
