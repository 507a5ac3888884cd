#include "qcorr/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

constexpr double kSignBand = 1e-12;
constexpr double kBisectionWidth = 1e-13;
constexpr int kMaxBisections = 200;

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

int sign_of(double v) { return v > kSignBand ? 1 : (v < -kSignBand ? -1 : 0); }

double p_max_indicator(const BellDiagonalState& s) {
  const Probabilities p = s.probabilities();
  return 2.0 * *std::max_element(p.begin(), p.end()) - 1.0;
}

double dominance_indicator(const BellDiagonalState& s) { return eof_bd(s) - discord_luo(s).value; }

// Bisection on a continuous indicator whose sign differs at the two ends.
double bisect_sign(const std::function<double(double)>& g, double lo, double hi) {
  const double g_lo = g(lo), g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo > 0.0) == (g_hi > 0.0))
    throw Error(ErrorCode::BracketInvalid, "indicator has the same sign at both ends");
  const bool lo_positive = g_lo > 0.0;
  for (int i = 0; i < kMaxBisections && hi - lo > kBisectionWidth; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Bisection on a predicate that holds at `inside` and fails at `outside`.
double bisect_predicate(const std::function<bool(double)>& holds, double inside, double outside) {
  if (!holds(inside) || holds(outside))
    throw Error(ErrorCode::BracketInvalid, "predicate does not change across the bracket");
  for (int i = 0; i < kMaxBisections && std::abs(outside - inside) > kBisectionWidth; ++i) {
    const double mid = 0.5 * (inside + outside);
    if (holds(mid))
      inside = mid;
    else
      outside = mid;
  }
  return 0.5 * (inside + outside);
}

double refine_in_t(const Trajectory& traj, double lo, double hi, EventKind kind,
                   double freeze_tol) {
  auto state = [&traj](double t) { return traj.state_at(t); };
  switch (kind) {
    case EventKind::SuddenDeath:
    case EventKind::Revival: {
      const double g_lo = p_max_indicator(state(lo)), g_hi = p_max_indicator(state(hi));
      const bool death_shape = g_lo > 0.0 && g_hi <= 0.0;
      const bool revival_shape = g_lo <= 0.0 && g_hi > 0.0;
      if ((kind == EventKind::SuddenDeath && !death_shape) ||
          (kind == EventKind::Revival && !revival_shape))
        throw Error(ErrorCode::BracketInvalid, "concurrence does not " +
                                                   std::string(kind == EventKind::SuddenDeath
                                                                   ? "vanish"
                                                                   : "revive") +
                                                   " across the bracket");
      return bisect_sign([&](double t) { return p_max_indicator(state(t)); }, lo, hi);
    }
    case EventKind::DiscordFracture: {
      const int before = branch_index(discord_luo(state(lo)).branch);
      const int after = branch_index(discord_luo(state(hi)).branch);
      if (before == after)
        throw Error(ErrorCode::BracketInvalid, "discord branch is the same at both ends");
      return bisect_sign(
          [&](double t) {
            const BellDiagonalState s = state(t);
            return std::abs(s.c(before)) - std::abs(s.c(after));
          },
          lo, hi);
    }
    case EventKind::DominanceCrossing:
      return bisect_sign([&](double t) { return dominance_indicator(state(t)); }, lo, hi);
    case EventKind::FreezeStart:
    case EventKind::FreezeEnd: {
      const double inside = kind == EventKind::FreezeEnd ? lo : hi;
      const double outside = kind == EventKind::FreezeEnd ? hi : lo;
      const double reference = discord_luo(state(inside)).value;
      return bisect_predicate(
          [&](double t) { return std::abs(discord_luo(state(t)).value - reference) <= freeze_tol; },
          inside, outside);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown event kind");
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
}

double Polynomial::operator()(double u) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

int Polynomial::degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }

Trajectory Trajectory::line(const Vec3& start, const Vec3& end, int samples,
                            std::optional<NoiseSpec> noise) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "a trajectory needs >= 2 samples");
  Trajectory t;
  t.kind_ = Kind::Line;
  t.start_ = start;
  t.end_ = end;
  t.samples_ = samples;
  t.noise_ = noise;
  return t;
}

Trajectory Trajectory::mapped(std::array<Polynomial, 3> coords, double u_start, double u_end,
                              int samples, std::optional<NoiseSpec> noise) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "a trajectory needs >= 2 samples");
  if (!std::isfinite(u_start) || !std::isfinite(u_end) || u_start == u_end)
    throw Error(ErrorCode::InvalidArgument, "parameter range must be finite and non-empty");
  for (const Polynomial& p : coords)
    if (p.degree() > kMaxTrajectoryDegree)
      throw Error(ErrorCode::InvalidArgument, "coordinate polynomials are limited to degree 3");
  Trajectory t;
  t.kind_ = Kind::Mapped;
  t.coords_ = std::move(coords);
  t.u_start_ = u_start;
  t.u_end_ = u_end;
  t.samples_ = samples;
  t.noise_ = noise;
  return t;
}

Trajectory Trajectory::with_noise(std::optional<NoiseSpec> noise) const {
  Trajectory t = *this;
  t.noise_ = noise;
  return t;
}

Trajectory Trajectory::with_samples(int samples) const {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "a trajectory needs >= 2 samples");
  Trajectory t = *this;
  t.samples_ = samples;
  return t;
}

Vec3 Trajectory::raw_point(double t) const {
  if (kind_ == Kind::Line) {
    Vec3 c;
    for (std::size_t i = 0; i < 3; ++i) c[i] = (1.0 - t) * start_[i] + t * end_[i];
    return c;
  }
  const double u = u_start_ + t * (u_end_ - u_start_);
  return {coords_[0](u), coords_[1](u), coords_[2](u)};
}

BellDiagonalState Trajectory::state_at(double t) const {
  const Vec3 c = raw_point(t);
  if (!in_tetrahedron(c, BellDiagonalState::kProjectionSlack))
    throw Error(ErrorCode::OutOfTetrahedron,
                "trajectory leaves the tetrahedron at " + parameter_name() + " = " +
                    format_value(parameter_at(t)));
  const BellDiagonalState s = BellDiagonalState::projected(c);
  return noise_ ? apply_white_noise(s, *noise_) : s;
}

double Trajectory::parameter_at(double t) const {
  if (kind_ == Kind::Mapped) return u_start_ + t * (u_end_ - u_start_);
  if (start_[0] != end_[0]) return (1.0 - t) * start_[0] + t * end_[0];
  return t;
}

double Trajectory::t_at(double parameter) const {
  if (kind_ == Kind::Mapped) return (parameter - u_start_) / (u_end_ - u_start_);
  if (start_[0] != end_[0]) return (parameter - start_[0]) / (end_[0] - start_[0]);
  return parameter;
}

std::string Trajectory::parameter_name() const {
  if (kind_ == Kind::Mapped) return "u";
  return start_[0] != end_[0] ? "c1" : "t";
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SuddenDeath: return "SuddenDeath";
    case EventKind::Revival: return "Revival";
    case EventKind::DiscordFracture: return "DiscordFracture";
    case EventKind::FreezeStart: return "FreezeStart";
    case EventKind::FreezeEnd: return "FreezeEnd";
    case EventKind::DominanceCrossing: return "DominanceCrossing";
  }
  return "?";
}

std::vector<TransitionEvent> detect_events(const SweepResult& result, double freeze_tol) {
  const std::size_t n = result.reports.size();
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "event detection needs >= 8 samples");
  if (result.t_values.size() != n || result.parameters.size() != n)
    throw Error(ErrorCode::InvalidArgument, "sweep result lists differ in length");

  const auto& t = result.t_values;
  const auto& rep = result.reports;
  std::vector<TransitionEvent> events;
  auto add = [&](EventKind kind, std::size_t a, std::size_t b, std::string detail) {
    // Unrefined location: the bracket midpoint, mapped affinely onto the parameter.
    const double loc = 0.5 * (result.parameters[a] + result.parameters[b]);
    events.push_back({kind, loc, {t[a], t[b]}, std::move(detail)});
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool alive = rep[i].concurrence > 0.0, alive_next = rep[i + 1].concurrence > 0.0;
    if (alive && !alive_next && i + 2 < n && rep[i + 2].concurrence == 0.0)
      add(EventKind::SuddenDeath, i, i + 1, "C>0 -> C=0");
    if (!alive && alive_next) add(EventKind::Revival, i, i + 1, "C=0 -> C>0");

    const DiscordBranch b0 = rep[i].discord_branch.value_or(DiscordBranch::D1);
    const DiscordBranch b1 = rep[i + 1].discord_branch.value_or(DiscordBranch::D1);
    if (b0 != b1) add(EventKind::DiscordFracture, i, i + 1, to_string(b0) + "->" + to_string(b1));
  }

  std::optional<std::size_t> last_signed;
  for (std::size_t i = 0; i < n; ++i) {
    const int s = sign_of(rep[i].eof - rep[i].discord);
    if (s == 0) continue;
    if (last_signed) {
      const int prev = sign_of(rep[*last_signed].eof - rep[*last_signed].discord);
      if (prev != s)
        add(EventKind::DominanceCrossing, *last_signed, i, prev > 0 ? "E>D -> E<D" : "E<D -> E>D");
    }
    last_signed = i;
  }

  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    double lo = rep[i].discord, hi = rep[i].discord;
    while (j + 1 < n) {
      const double d = rep[j + 1].discord;
      if (std::max(hi, d) - std::min(lo, d) > freeze_tol) break;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      ++j;
    }
    if (j - i + 1 >= 3) {
      const std::string detail = "D=" + format_value(rep[i].discord);
      add(EventKind::FreezeStart, i == 0 ? 0 : i - 1, i, detail);
      add(EventKind::FreezeEnd, j, j + 1 < n ? j + 1 : j, detail);
      i = j + 1;
    } else {
      ++i;
    }
  }

  std::stable_sort(events.begin(), events.end(), [](const TransitionEvent& a, const TransitionEvent& b) {
    return a.bracket.first + a.bracket.second < b.bracket.first + b.bracket.second;
  });
  return events;
}

double refine_event(const Trajectory& traj, std::pair<double, double> bracket, EventKind kind,
                    double freeze_tol) {
  double lo = traj.t_at(bracket.first), hi = traj.t_at(bracket.second);
  if (lo > hi) std::swap(lo, hi);
  if (!(lo >= -1e-12 && hi <= 1.0 + 1e-12) || !(lo < hi))
    throw Error(ErrorCode::BracketInvalid, "bracket outside the trajectory or empty");
  return traj.parameter_at(refine_in_t(traj, std::max(lo, 0.0), std::min(hi, 1.0), kind, freeze_tol));
}

SweepResult sweep(const Trajectory& traj, const SweepOptions& options) {
  const int n = traj.samples();
  SweepResult r;
  r.parameters.reserve(static_cast<std::size_t>(n));
  r.t_values.reserve(static_cast<std::size_t>(n));
  r.states.reserve(static_cast<std::size_t>(n));
  r.reports.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const BellDiagonalState s = traj.state_at(t);
    r.t_values.push_back(t);
    r.parameters.push_back(traj.parameter_at(t));
    r.states.push_back(s);
    r.reports.push_back(analytic_report(s, options.region_tol));
  }
  if (n < 8) return r;

  r.events = detect_events(r, options.freeze_tol);
  for (TransitionEvent& e : r.events) {
    if (e.bracket.first == e.bracket.second) {
      e.location = traj.parameter_at(e.bracket.first);
      continue;
    }
    e.location = traj.parameter_at(
        refine_in_t(traj, e.bracket.first, e.bracket.second, e.kind, options.freeze_tol));
  }
  return r;
}

ExcessStatistics excess_statistics(const SweepResult& result) {
  if (result.reports.empty()) throw Error(ErrorCode::InvalidArgument, "empty sweep");
  ExcessStatistics out{-std::numeric_limits<double>::infinity(), 0.0, result.parameters.front()};
  bool have_relative = false;
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const double e = result.reports[i].eof, d = result.reports[i].discord;
    out.max_abs_excess = std::max(out.max_abs_excess, e - d);
    if (d > 1e-9) {
      const double rel = (e - d) / d;
      if (!have_relative || rel > out.max_relative_excess) {
        out.max_relative_excess = rel;
        out.at = result.parameters[i];
        have_relative = true;
      }
    }
  }
  return out;
}

}  // namespace qcorr
