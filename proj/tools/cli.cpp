#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#include "poly_parse.hpp"
#include "qcorr/bell_geometry.hpp"
#include "qcorr/channels.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/error.hpp"
#include "qcorr/serialize.hpp"
#include "qcorr/tomography.hpp"
#include "qcorr/trajectories.hpp"

namespace qcorr::cli {

namespace {

using nlohmann::json;

constexpr double kClassifyTol = 1e-6;
constexpr double kDefaultRegionTol = 1e-9;

struct Globals {
  std::string format;
  std::optional<double> tol;
  double freeze_tol = 1e-9;
  std::optional<double> nu;
  std::uint64_t seed = 1;
};

struct StateSpec {
  std::string c;
  std::string p;
  std::string matrix;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(ErrorCode::ParseError, std::string(what) + ": cannot read \"" + item + "\"");
    values.push_back(v);
  }
  if (values.size() != expected)
    throw Error(ErrorCode::ParseError, std::string(what) + " needs " + std::to_string(expected) +
                                           " comma-separated values");
  return values;
}

Vec3 parse_vec3(const std::string& text, const char* what) {
  const auto v = parse_list(text, 3, what);
  return {v[0], v[1], v[2]};
}

void add_state_options(CLI::App& cmd, StateSpec& spec) {
  auto* c = cmd.add_option("--c", spec.c, "Bell-diagonal coordinates c1,c2,c3");
  auto* p = cmd.add_option("--p", spec.p, "Bell weights p1,p2,p3,p4");
  auto* m = cmd.add_option("--matrix", spec.matrix, "JSON file with a 4x4 complex matrix");
  c->excludes(p)->excludes(m);
  p->excludes(m);
}

// Bell-diagonal coordinates when the state was given in that form.
std::optional<BellDiagonalState> bell_from_spec(const StateSpec& spec) {
  if (!spec.c.empty()) return BellDiagonalState(parse_vec3(spec.c, "--c"));
  if (!spec.p.empty()) {
    const auto v = parse_list(spec.p, 4, "--p");
    return BellDiagonalState::from_probabilities({v[0], v[1], v[2], v[3]});
  }
  return std::nullopt;
}

// Files written with 9 significant digits miss the 1e-10 trace and
// Hermiticity tolerances; absorb drift of that size before validating.
ComplexMatrix absorb_print_rounding(const ComplexMatrix& m) {
  constexpr double kPrintTol = 1e-8;
  if (hermiticity_defect(m) > kPrintTol) return m;
  ComplexMatrix h = (m + m.adjoint()) * complex(0.5);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kPrintTol) return m;
  return h * complex(1.0 / tr);
}

DensityMatrix density_from_spec(const StateSpec& spec, const Globals& g) {
  std::optional<DensityMatrix> rho;
  if (auto bell = bell_from_spec(spec)) {
    rho = to_density_matrix(*bell);
  } else if (!spec.matrix.empty()) {
    const ComplexMatrix m = read_matrix_file(spec.matrix);
    if (m.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "matrix must be 4x4");
    rho = DensityMatrix(absorb_print_rounding(m));
  } else {
    throw Error(ErrorCode::InvalidArgument, "give one of --c, --p or --matrix");
  }
  if (g.nu) rho = apply_white_noise(*rho, NoiseSpec(*g.nu));
  return *rho;
}

std::string opt_number(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

const std::vector<std::string> kReportColumns = {
    "concurrence", "eof",       "discord",   "D1",        "D2",     "D3",      "branch",
    "mutual_information", "classical_correlation", "region", "source", "converged"};

std::vector<std::string> report_cells(const CorrelationReport& r) {
  std::array<std::optional<double>, 3> d;
  if (r.discord_branch_values)
    for (std::size_t i = 0; i < 3; ++i) d[i] = (*r.discord_branch_values)[i];
  return {format_number(r.concurrence),
          format_number(r.eof),
          format_number(r.discord),
          opt_number(d[0]),
          opt_number(d[1]),
          opt_number(d[2]),
          r.discord_branch ? to_string(*r.discord_branch) : "",
          format_number(r.mutual_information),
          format_number(r.classical_correlation),
          r.region ? to_string(r.region->entanglement_region) : "",
          r.source == ReportSource::Analytic ? "Analytic" : "Numeric",
          r.converged ? "1" : "0"};
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

bool want_csv(const Globals& g, bool csv_default) {
  if (g.format.empty()) return csv_default;
  return g.format == "csv";
}

// --- compute -------------------------------------------------------------

void cmd_compute(const StateSpec& spec, bool numeric, const Globals& g, std::ostream& out) {
  const DensityMatrix rho = density_from_spec(spec, g);
  ReportOptions options;
  options.force_numeric = numeric;
  options.region_tol = g.tol.value_or(kDefaultRegionTol);
  const CorrelationReport r = full_report(rho, options);
  if (want_csv(g, false)) {
    write_row(out, kReportColumns);
    write_row(out, report_cells(r));
  } else {
    out << to_json(r).dump(2) << '\n';
  }
}

// --- sweep ---------------------------------------------------------------

Trajectory build_trajectory(const std::string& line, const std::string& poly,
                            const std::string& range, int samples, const Globals& g) {
  std::optional<NoiseSpec> noise;
  if (g.nu) noise = NoiseSpec(*g.nu);
  if (!line.empty()) {
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::ParseError, "--line expects c1,c2,c3:c1,c2,c3");
    return Trajectory::line(parse_vec3(line.substr(0, colon), "--line start"),
                            parse_vec3(line.substr(colon + 1), "--line end"), samples, noise);
  }
  if (poly.empty()) throw Error(ErrorCode::InvalidArgument, "give --line or --poly");
  if (range.empty()) throw Error(ErrorCode::InvalidArgument, "--poly needs --range u0:u1");
  const std::size_t colon = range.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "--range expects u0:u1");
  const auto u0 = parse_list(range.substr(0, colon), 1, "--range start");
  const auto u1 = parse_list(range.substr(colon + 1), 1, "--range end");
  return Trajectory::mapped(parse_coordinates(poly), u0[0], u1[0], samples, noise);
}

void cmd_sweep(const Trajectory& traj, const Globals& g, std::ostream& out) {
  SweepOptions options;
  options.freeze_tol = g.freeze_tol;
  options.region_tol = g.tol.value_or(kDefaultRegionTol);
  const SweepResult res = sweep(traj, options);

  if (want_csv(g, true)) {
    write_row(out, {"param", "c1", "c2", "c3", "C", "E", "D", "D1", "D2", "D3", "branch", "region"});
    for (std::size_t k = 0; k < res.states.size(); ++k) {
      const Vec3& c = res.states[k].c();
      const CorrelationReport& r = res.reports[k];
      const auto& d = *r.discord_branch_values;
      write_row(out, {format_number(res.parameters[k]), format_number(c[0]), format_number(c[1]),
                      format_number(c[2]), format_number(r.concurrence), format_number(r.eof),
                      format_number(r.discord), format_number(d[0]), format_number(d[1]),
                      format_number(d[2]), to_string(*r.discord_branch),
                      to_string(r.region->entanglement_region)});
    }
    out << "# EVENTS parameter=" << traj.parameter_name() << '\n';
    for (const TransitionEvent& e : res.events)
      out << "# " << to_string(e.kind) << ',' << format_number(e.location) << ',' << e.detail
          << '\n';
    return;
  }

  json rows = json::array();
  for (std::size_t k = 0; k < res.states.size(); ++k) {
    json row = to_json(res.reports[k]);
    row["param"] = round9(res.parameters[k]);
    const Vec3& c = res.states[k].c();
    row["c"] = {round9(c[0]), round9(c[1]), round9(c[2])};
    rows.push_back(std::move(row));
  }
  json events = json::array();
  for (const TransitionEvent& e : res.events)
    events.push_back({{"kind", to_string(e.kind)},
                      {"location", round9(e.location)},
                      {"detail", e.detail}});
  out << json{{"parameter", traj.parameter_name()}, {"rows", rows}, {"events", events}}.dump(2)
      << '\n';
}

// --- classify ------------------------------------------------------------

void cmd_classify(const StateSpec& spec, const Globals& g, std::ostream& out) {
  std::optional<BellDiagonalState> bell = bell_from_spec(spec);
  if (!bell) {
    const DensityMatrix rho = density_from_spec(spec, Globals{});
    bell = BellDiagonalState::from_density_matrix(rho);
    if (!bell) throw Error(ErrorCode::InvalidState, "matrix is not Bell-diagonal");
  }
  if (g.nu) *bell = apply_white_noise(*bell, NoiseSpec(*g.nu));

  const double tol = g.tol.value_or(kClassifyTol);
  const RegionLabel label = classify_region(*bell, tol);
  const LuoDiscord luo = discord_luo(*bell);
  const auto planes = branch_plane_distances(*bell);
  const double oct = octahedron_distance(*bell);
  const bool zero_discord = luo.value <= tol;

  if (want_csv(g, false)) {
    std::string on_planes;
    for (BranchPlane p : label.on_branch_boundary) on_planes += (on_planes.empty() ? "" : ";") + to_string(p);
    write_row(out, {"c1", "c2", "c3", "region", "branch", "on_branch_boundary", "octahedron_distance",
                    "dist_c1c2", "dist_c2c3", "dist_c3c1", "discord", "zero_discord"});
    const Vec3& c = bell->c();
    write_row(out, {format_number(c[0]), format_number(c[1]), format_number(c[2]),
                    to_string(label.entanglement_region), to_string(label.discord_branch), on_planes,
                    format_number(oct), format_number(planes[0]), format_number(planes[1]),
                    format_number(planes[2]), format_number(luo.value), zero_discord ? "1" : "0"});
    return;
  }
  json j = to_json(label);
  const Vec3& c = bell->c();
  j["c"] = {round9(c[0]), round9(c[1]), round9(c[2])};
  j["octahedron_distance"] = round9(oct);
  j["branch_plane_distances"] = {{"C1C2", round9(planes[0])},
                                 {"C2C3", round9(planes[1])},
                                 {"C3C1", round9(planes[2])}};
  j["discord"] = round9(luo.value);
  if (zero_discord) j["note"] = "zero discord: state lies on a coordinate axis";
  out << j.dump(2) << '\n';
}

// --- tomo ----------------------------------------------------------------

void cmd_tomo(const StateSpec& spec, std::int64_t counts, int set_size, int seeds,
              const Globals& g, std::ostream& out) {
  if (counts < 1) throw Error(ErrorCode::InvalidArgument, "--counts must be >= 1");
  if (seeds < 1) throw Error(ErrorCode::InvalidArgument, "--seeds must be >= 1");
  const DensityMatrix truth = density_from_spec(spec, g);
  const ProjectorSet set = ProjectorSet::from_size(set_size);

  std::vector<TomographyRun> runs;
  runs.reserve(static_cast<std::size_t>(seeds));
  for (int k = 0; k < seeds; ++k)
    runs.push_back(run_tomography(truth, set, counts, g.seed + static_cast<std::uint64_t>(k)));

  double sum = 0.0;
  double min = 1.0;
  for (const TomographyRun& r : runs) {
    sum += r.fidelity;
    min = std::min(min, r.fidelity);
  }
  const double mean = sum / static_cast<double>(runs.size());

  if (want_csv(g, true)) {
    write_row(out, {"seed", "fidelity", "C", "E", "D", "mutual_information"});
    for (const TomographyRun& r : runs)
      write_row(out, {std::to_string(r.seed), format_number(r.fidelity),
                      format_number(r.report->concurrence), format_number(r.report->eof),
                      format_number(r.report->discord),
                      format_number(r.report->mutual_information)});
    out << "# SUMMARY set=" << to_string(set.name) << ",runs=" << runs.size()
        << ",mean_fidelity=" << format_number(mean) << ",min_fidelity=" << format_number(min)
        << '\n';
    return;
  }
  json list = json::array();
  for (const TomographyRun& r : runs) list.push_back(to_json(r));
  out << json{{"runs", list},
              {"summary",
               {{"set", to_string(set.name)},
                {"runs", runs.size()},
                {"mean_fidelity", round9(mean)},
                {"min_fidelity", round9(min)}}}}
             .dump(2)
      << '\n';
}

// --- regions -------------------------------------------------------------

void cmd_regions(int n, const Globals& g, std::ostream& out) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "--grid must be >= 2");
  const bool csv = want_csv(g, true);
  const double tol = g.tol.value_or(kDefaultRegionTol);
  if (csv) write_row(out, {"c1", "c2", "c3", "in_tetrahedron", "region", "branch", "C", "E", "D"});
  json rows = json::array();
  auto coord = [n](int i) { return -1.0 + 2.0 * i / (n - 1); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec3 c{coord(i), coord(j), coord(k)};
        const bool inside = in_tetrahedron(c);
        std::optional<CorrelationReport> r;
        if (inside) r = analytic_report(BellDiagonalState::projected(c), tol);
        if (csv) {
          std::vector<std::string> cells = {format_number(c[0]), format_number(c[1]),
                                            format_number(c[2]), inside ? "1" : "0"};
          if (r) {
            cells.insert(cells.end(), {to_string(r->region->entanglement_region),
                                       to_string(*r->discord_branch), format_number(r->concurrence),
                                       format_number(r->eof), format_number(r->discord)});
          } else {
            cells.insert(cells.end(), 5, "");
          }
          write_row(out, cells);
        } else {
          json row = {{"c", {round9(c[0]), round9(c[1]), round9(c[2])}}, {"in_tetrahedron", inside}};
          if (r) {
            row["region"] = to_string(r->region->entanglement_region);
            row["branch"] = to_string(*r->discord_branch);
            row["C"] = round9(r->concurrence);
            row["E"] = round9(r->eof);
            row["D"] = round9(r->discord);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  if (!csv) out << rows.dump(2) << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::BracketInvalid:
    case ErrorCode::SingularDesign: return kExitNumeric;
    default: return kExitUsage;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation measures of two-qubit states", "qcorr"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Region classification tolerance");
  app.add_option("--freeze-tol", g.freeze_tol, "Discord spread tolerated inside a freeze");
  app.add_option("--nu", g.nu, "White-noise fraction")->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", g.seed, "Base seed for tomography");

  StateSpec compute_state, classify_state, tomo_state;
  bool numeric = false;
  auto* compute = app.add_subcommand("compute", "Correlation report of one state")->fallthrough();
  add_state_options(*compute, compute_state);
  compute->add_flag("--numeric", numeric, "Use the general optimizer even for Bell-diagonal input");

  std::string line, poly, range;
  int samples = 201;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sample a trajectory and detect events")->fallthrough();
  auto* line_opt = sweep_cmd->add_option("--line", line, "Straight segment c1,c2,c3:c1,c2,c3");
  auto* poly_opt = sweep_cmd->add_option("--poly", poly, "Coordinates, e.g. \"c1=u; c2=u-1.7; c3=0.7\"");
  sweep_cmd->add_option("--range", range, "Parameter range u0:u1 for --poly");
  sweep_cmd->add_option("--samples", samples, "Number of samples")->check(CLI::Range(8, 1000000));
  line_opt->excludes(poly_opt);

  auto* classify = app.add_subcommand("classify", "Region and branch of a Bell-diagonal state")->fallthrough();
  add_state_options(*classify, classify_state);

  std::int64_t counts = 100000;
  int set_size = 16;
  int seeds = 1;
  auto* tomo = app.add_subcommand("tomo", "Simulated tomography of a state")->fallthrough();
  add_state_options(*tomo, tomo_state);
  tomo->add_option("--counts", counts, "Mean counts per projector");
  tomo->add_option("--set", set_size, "Projector set size")->check(CLI::IsMember({16, 36}));
  tomo->add_option("--seeds", seeds, "Number of seeds");

  int grid = 21;
  auto* regions = app.add_subcommand("regions", "Point cloud of the c-cube")->fallthrough();
  regions->add_option("--grid", grid, "Points per axis");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (compute->parsed()) {
      cmd_compute(compute_state, numeric, g, out);
    } else if (sweep_cmd->parsed()) {
      cmd_sweep(build_trajectory(line, poly, range, samples, g), g, out);
    } else if (classify->parsed()) {
      cmd_classify(classify_state, g, out);
    } else if (tomo->parsed()) {
      cmd_tomo(tomo_state, counts, set_size, seeds, g, out);
    } else if (regions->parsed()) {
      cmd_regions(grid, g, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace qcorr::cli
