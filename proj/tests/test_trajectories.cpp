#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "paths.hpp"
#include "qcorr/error.hpp"
#include "qcorr/trajectories.hpp"
#include "support.hpp"

using namespace qcorr;
using namespace qcorr::testing;

namespace {

std::vector<TransitionEvent> of_kind(const SweepResult& r, EventKind k) {
  std::vector<TransitionEvent> out;
  for (const auto& e : r.events)
    if (e.kind == k) out.push_back(e);
  return out;
}

// E - D from the oracle formulas, for c on a path.
double excess_oracle(const Vec3& c) {
  const double p[4] = {(1 + c[0] - c[1] + c[2]) / 4, (1 - c[0] + c[1] + c[2]) / 4,
                       (1 + c[0] + c[1] - c[2]) / 4, (1 - c[0] - c[1] - c[2]) / 4};
  const double conc = std::max(0.0, 2 * *std::max_element(p, p + 4) - 1);
  return eof_oracle(conc) - luo_oracle(c);
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  const double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0) == (flo > 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("polynomials") {
  const Polynomial p({1.0, -2.0, 0.5, 0.0, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == doctest::Approx(1.0 - 4.0 + 2.0));
  CHECK(Polynomial::constant(0.7)(123.0) == 0.7);
  CHECK(Polynomial().degree() == 0);
  CHECK_THROWS_AS(Trajectory::mapped({Polynomial({0, 0, 0, 0, 1}), Polynomial(), Polynomial()}, 0, 1, 10), Error);
}

TEST_CASE("trajectory construction and parameter mapping") {
  CHECK_THROWS_AS(Trajectory::line({0, 0, 0}, {0, 0, 1}, 1), Error);
  CHECK_THROWS_AS(face_parallel_path(10).with_samples(1), Error);
  CHECK_THROWS_AS(Trajectory::mapped({Polynomial(), Polynomial(), Polynomial()}, 1, 1, 10), Error);

  const Trajectory line = face_diagonal_path(11);
  CHECK(line.parameter_name() == "c1");
  CHECK(line.parameter_at(0.0) == 1.0);
  CHECK(line.parameter_at(1.0) == 0.0);
  CHECK(line.t_at(0.25) == doctest::Approx(0.75));
  const Trajectory axis = Trajectory::line({0, 0, 0}, {0, 0, 1}, 11);
  CHECK(axis.parameter_name() == "t");
  CHECK(axis.parameter_at(0.3) == 0.3);
  const Trajectory mapped = dephasing_path(11);
  CHECK(mapped.parameter_name() == "u");
  CHECK(mapped.parameter_at(0.5) == doctest::Approx(-0.5));
  CHECK(mapped.t_at(-0.25) == doctest::Approx(0.75));
  const Vec3 c = mapped.raw_point(0.0);
  CHECK(c[0] == -1.0);
  CHECK(c[1] == doctest::Approx(0.7));
  CHECK(c[2] == 0.7);
}

TEST_CASE("leaving the tetrahedron aborts with the parameter value") {
  const Trajectory bad = Trajectory::line({0, 0, 0}, {1, 1, 1}, 11);
  try {
    sweep(bad);
    FAIL("expected OutOfTetrahedron");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfTetrahedron);
    CHECK(std::string(e.what()).find("c1 =") != std::string::npos);
  }
}

TEST_CASE("noise is applied pointwise") {
  const Trajectory t = face_parallel_path(16, NoiseSpec(0.1));
  const Vec3 raw = t.raw_point(0.0);
  const Vec3 c = t.state_at(0.0).c();
  for (std::size_t i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(0.9 * raw[i]));
}

TEST_CASE("face-parallel path") {
  const SweepResult r = sweep(face_parallel_path(64));
  REQUIRE(r.reports.size() == 64);
  double emin = 1, emax = 0;
  for (const auto& rep : r.reports) {
    emin = std::min(emin, rep.eof);
    emax = std::max(emax, rep.eof);
  }
  CHECK(emax - emin <= 1e-12);
  CHECK(std::abs(emin - 0.592) < 1e-3);
  CHECK(std::abs(r.reports.front().discord - 0.390) < 1e-3);
  CHECK(std::abs(r.reports.back().discord - 0.390) < 1e-3);
  CHECK(r.reports.front().discord_branch == DiscordBranch::D2);
  CHECK(r.reports.back().discord_branch == DiscordBranch::D1);

  const auto fr = of_kind(r, EventKind::DiscordFracture);
  REQUIRE(fr.size() == 1);
  CHECK(std::abs(fr[0].location - 0.85) < 1e-9);
  CHECK(fr[0].detail == "D2->D1");
  CHECK(std::abs(discord_luo(BellDiagonalState({0.85, -0.85, 0.7})).value - 0.624) < 1e-3);

  const auto x = of_kind(r, EventKind::DominanceCrossing);
  REQUIRE(x.size() == 2);
  auto path = [](double u) { return excess_oracle({u, u - 1.7, 0.7}); };
  const double x1 = bisect(path, 0.7, 0.85), x2 = bisect(path, 0.85, 1.0);
  CHECK(std::abs(x[0].location - x1) < 1e-9);
  CHECK(std::abs(x[1].location - x2) < 1e-9);
  CHECK(std::abs(x1 - 0.832) < 2e-3);
  CHECK(std::abs(x2 - 0.868) < 2e-3);
  CHECK(of_kind(r, EventKind::SuddenDeath).empty());
  CHECK(of_kind(r, EventKind::FreezeStart).empty());

  const ExcessStatistics ex = excess_statistics(r);
  const double at_start = (eof_oracle(0.7) - luo_oracle({0.7, -1.0, 0.7})) / luo_oracle({0.7, -1.0, 0.7});
  CHECK(std::abs(ex.max_relative_excess - at_start) < 1e-9);
  CHECK(std::abs(ex.max_relative_excess - 0.52) < 0.01);
  CHECK((ex.at == doctest::Approx(0.7) || ex.at == doctest::Approx(1.0)));
}

TEST_CASE("face-diagonal path") {
  const SweepResult r = sweep(face_diagonal_path(101));
  const auto death = of_kind(r, EventKind::SuddenDeath);
  REQUIRE(death.size() == 1);
  CHECK(std::abs(death[0].location - 0.5) < 1e-9);
  const auto fr = of_kind(r, EventKind::DiscordFracture);
  REQUIRE(fr.size() == 1);
  CHECK(std::abs(fr[0].location - 1.0 / 3.0) < 1e-9);
  CHECK(fr[0].detail == "D1->D3");
  CHECK(of_kind(r, EventKind::Revival).empty());
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    const double c1 = r.parameters[i];
    if (c1 <= 1.0 / 3.0) CHECK(std::abs(r.reports[i].discord - c1) <= 1e-9);
    // Sweep runs from c1 = 1 down to c1 = 0 along |c1| = |c2|.
    if (c1 > 1.0 / 3.0 + 1e-9) CHECK(r.reports[i].discord_branch == DiscordBranch::D1);
  }
  CHECK(r.parameters.front() == 1.0);
  CHECK(r.parameters.back() == 0.0);
}

TEST_CASE("dephasing path") {
  const SweepResult r = sweep(dephasing_path(201));
  const auto fs = of_kind(r, EventKind::FreezeStart);
  const auto fe = of_kind(r, EventKind::FreezeEnd);
  REQUIRE(fs.size() == 1);
  REQUIRE(fe.size() == 1);
  CHECK(std::abs(fs[0].location + 1.0) < 1e-6);
  CHECK(std::abs(fe[0].location + 0.7) < 1e-6);
  double dmin = 1, dmax = 0;
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    if (r.parameters[i] > -0.7) continue;
    dmin = std::min(dmin, r.reports[i].discord);
    dmax = std::max(dmax, r.reports[i].discord);
  }
  CHECK(dmax - dmin <= 1e-9);
  const auto death = of_kind(r, EventKind::SuddenDeath);
  REQUIRE(death.size() == 1);
  CHECK(std::abs(death[0].location + 0.3 / 1.7) < 1e-9);
  CHECK(std::abs(death[0].location + 0.176) < 1e-3);
}

TEST_CASE("axis path carries no correlations") {
  const SweepResult r = sweep(Trajectory::line({0, 0, 0}, {0, 0, 1}, 21));
  for (const auto& rep : r.reports) {
    CHECK(rep.discord == 0.0);
    CHECK(rep.eof == 0.0);
  }
  const ExcessStatistics ex = excess_statistics(r);
  CHECK(ex.max_abs_excess == 0.0);
  CHECK(ex.max_relative_excess == 0.0);
}

TEST_CASE("Werner line excess") {
  const SweepResult r = sweep(werner_path(2001));
  const ExcessStatistics ex = excess_statistics(r);
  double best = -1, best_t = 0;
  for (int i = 1; i <= 20000; ++i) {
    const double t = i / 20000.0;
    const double d = luo_oracle({-t, -t, -t});
    if (d <= 1e-9) continue;
    const double rel = excess_oracle({-t, -t, -t}) / d;
    if (rel > best) {
      best = rel;
      best_t = t;
    }
  }
  CHECK(std::abs(ex.max_relative_excess - best) < 1e-5);
  CHECK(std::abs(ex.at - best_t) < 2e-3);
  CHECK(std::abs(ex.max_relative_excess - 0.02) <= 0.01);
}

TEST_CASE("refine_event on explicit brackets") {
  CHECK(std::abs(refine_event(face_diagonal_path(64), {0.45, 0.55}, EventKind::SuddenDeath) - 0.5) < 1e-9);
  CHECK(std::abs(refine_event(dephasing_path(64), {-0.2, -0.15}, EventKind::SuddenDeath) + 0.3 / 1.7) < 1e-9);
  CHECK(std::abs(refine_event(face_parallel_path(64), {0.8, 0.9}, EventKind::DiscordFracture) - 0.85) < 1e-9);
  try {
    refine_event(face_diagonal_path(64), {0.6, 0.7}, EventKind::SuddenDeath);
    FAIL("expected BracketInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BracketInvalid);
  }
  CHECK_THROWS_AS(refine_event(face_diagonal_path(64), {1.5, 2.0}, EventKind::SuddenDeath), Error);
}

TEST_CASE("detect_events needs eight samples") {
  const SweepResult r = sweep(face_parallel_path(7));
  CHECK(r.events.empty());
  CHECK_THROWS_AS(detect_events(r, 1e-9), Error);
}

TEST_CASE("refined events do not depend on the sample count") {
  for (const auto& make : {face_parallel_path, face_diagonal_path, dephasing_path}) {
    const SweepResult coarse = sweep(make(64, std::nullopt));
    const SweepResult fine = sweep(make(1024, std::nullopt));
    REQUIRE(coarse.events.size() == fine.events.size());
    for (std::size_t i = 0; i < coarse.events.size(); ++i) {
      CHECK(coarse.events[i].kind == fine.events[i].kind);
      CHECK(std::abs(coarse.events[i].location - fine.events[i].location) < 1e-9);
    }
  }
}

TEST_CASE("refined events sit on the geometric boundaries") {
  for (const auto& make : {face_parallel_path, face_diagonal_path, dephasing_path}) {
    const Trajectory traj = make(97, std::nullopt);
    const SweepResult r = sweep(traj);
    REQUIRE(std::is_sorted(r.events.begin(), r.events.end(), [](const auto& a, const auto& b) {
      return a.bracket.first < b.bracket.first;
    }));
    for (const auto& e : r.events) {
      const BellDiagonalState s = traj.state_at(traj.t_at(e.location));
      if (e.kind == EventKind::SuddenDeath || e.kind == EventKind::Revival) {
        const Probabilities p = s.probabilities();
        CHECK(std::abs(*std::max_element(p.begin(), p.end()) - 0.5) < 1e-9);
      }
      if (e.kind == EventKind::DiscordFracture) {
        // The two largest |c_i| coincide.
        std::array<double, 3> a{std::abs(s.c(0)), std::abs(s.c(1)), std::abs(s.c(2))};
        std::sort(a.rbegin(), a.rend());
        CHECK(a[0] - a[1] < 1e-9);
      }
    }
  }
}

TEST_CASE("noise lowers both curves and moves the death point outward") {
  const double nus[] = {0.0, 0.005, 0.01, 0.05};
  double previous_death = 0.0;
  for (double nu : nus) {
    const std::optional<NoiseSpec> noise = nu > 0 ? std::optional<NoiseSpec>(NoiseSpec(nu)) : std::nullopt;
    const SweepResult r = sweep(dephasing_path(201, noise));
    const auto death = of_kind(r, EventKind::SuddenDeath);
    REQUIRE(death.size() == 1);
    const double want = (0.7 - 1.0 / (1.0 - nu)) / 1.7;
    CHECK(std::abs(death[0].location - want) < 1e-9);
    if (nu > 0) CHECK(death[0].location < previous_death);
    previous_death = death[0].location;
    // No entanglement inside the (scaled) octahedron.
    for (std::size_t i = 0; i < r.states.size(); ++i)
      if (octahedron_distance(r.states[i]) >= 0) CHECK(r.reports[i].concurrence == 0.0);
  }
}
