#pragma once

// Parametrized paths through the Bell-diagonal tetrahedron, dense sweeps of
// the correlation measures along them, and detection of the qualitative
// events on the way: entanglement sudden death and revival, discord branch
// fractures, discord freezing and E/D dominance crossings.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/bell_geometry.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/correlations.hpp"

namespace qcorr {

/// Polynomial in u with ascending coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> ascending);
  static Polynomial constant(double value) { return Polynomial({value}); }

  double operator()(double u) const;
  int degree() const;
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

inline constexpr int kMaxTrajectoryDegree = 3;

/// A path sampled at `samples` uniform points of an internal parameter
/// t in [0, 1].
///
/// Line: c(t) = (1 - t) start + t end. The reported parameter is c1 when
/// c1 varies along the line, t otherwise.
/// Mapped: u = u_start + t (u_end - u_start), c_i = poly_i(u); the reported
/// parameter is u. u_end < u_start sweeps downward.
///
/// Optional white noise is applied pointwise after the path is evaluated.
class Trajectory {
 public:
  enum class Kind { Line, Mapped };

  static Trajectory line(const Vec3& start, const Vec3& end, int samples,
                         std::optional<NoiseSpec> noise = std::nullopt);
  static Trajectory mapped(std::array<Polynomial, 3> coords, double u_start, double u_end,
                           int samples, std::optional<NoiseSpec> noise = std::nullopt);

  Kind kind() const noexcept { return kind_; }
  int samples() const noexcept { return samples_; }
  const std::optional<NoiseSpec>& noise() const noexcept { return noise_; }
  Trajectory with_noise(std::optional<NoiseSpec> noise) const;
  Trajectory with_samples(int samples) const;

  /// Coordinates before noise.
  Vec3 raw_point(double t) const;
  /// State after noise. Throws OutOfTetrahedron (naming the parameter) if
  /// the path leaves the tetrahedron by more than 1e-9.
  BellDiagonalState state_at(double t) const;

  double parameter_at(double t) const;
  double t_at(double parameter) const;
  /// "c1", "u" or "t".
  std::string parameter_name() const;

 private:
  Trajectory() = default;

  Kind kind_ = Kind::Line;
  Vec3 start_{}, end_{};
  std::array<Polynomial, 3> coords_{};
  double u_start_ = 0.0, u_end_ = 1.0;
  int samples_ = 2;
  std::optional<NoiseSpec> noise_;
};

enum class EventKind { SuddenDeath, Revival, DiscordFracture, FreezeStart, FreezeEnd, DominanceCrossing };
std::string to_string(EventKind kind);

struct TransitionEvent {
  EventKind kind;
  /// Parameter value (refined after `sweep`).
  double location;
  /// Bracket in t from the sample scan; equal ends mean the event sits on a
  /// sample (a freeze touching the end of the sweep).
  std::pair<double, double> bracket;
  std::string detail;
};

struct SweepResult {
  std::vector<double> parameters;
  std::vector<double> t_values;
  std::vector<BellDiagonalState> states;
  std::vector<CorrelationReport> reports;
  /// In sweep order.
  std::vector<TransitionEvent> events;
};

struct SweepOptions {
  double freeze_tol = 1e-9;
  double region_tol = 1e-9;
};

/// Samples the trajectory with the closed-form measures, then detects and
/// refines events.
SweepResult sweep(const Trajectory& traj, const SweepOptions& options = {});

/// Sample-resolution events. Needs at least 8 samples.
///  - SuddenDeath: C > 0 followed by C = 0 on at least two samples.
///  - Revival: C = 0 followed by C > 0.
///  - DiscordFracture: the minimizing Luo branch changes.
///  - FreezeStart/FreezeEnd: bounds of maximal runs of >= 3 samples whose
///    discord spread is <= freeze_tol.
///  - DominanceCrossing: sign(E - D) changes (|E - D| <= 1e-12 counts as 0).
std::vector<TransitionEvent> detect_events(const SweepResult& result, double freeze_tol);

/// Bisects the event indicator inside a bracket given in parameter units:
/// 2 max p - 1 for death/revival, |c_i| - |c_j| for a fracture between
/// branches i and j, E - D for crossings, and the freeze_tol band around
/// the frozen discord for freeze endpoints. Throws BracketInvalid when the
/// indicator does not change across the bracket.
double refine_event(const Trajectory& traj, std::pair<double, double> bracket, EventKind kind,
                    double freeze_tol = 1e-9);

struct ExcessStatistics {
  double max_abs_excess;
  double max_relative_excess;
  /// Parameter of the largest relative excess.
  double at;
};

/// max (E - D) and max (E - D)/D over samples with D > 1e-9.
ExcessStatistics excess_statistics(const SweepResult& result);

}  // namespace qcorr
