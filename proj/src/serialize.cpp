#include "qcorr/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

using nlohmann::json;

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double round9(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_number(x));
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({round9(m(i, j).real()), round9(m(i, j).imag())});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > 4)
    throw Error(ErrorCode::ParseError, "matrix must be an array of 1 to 4 rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != n)
      throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " must have " +
                                             std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      const json& z = row[k];
      if (z.is_number()) {
        m(i, k) = complex(z.get<double>(), 0.0);
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
        m(i, k) = complex(z[0].get<double>(), z[1].get<double>());
      } else {
        throw Error(ErrorCode::ParseError, "entry (" + std::to_string(i) + "," +
                                               std::to_string(k) + ") must be [re, im]");
      }
    }
  }
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return matrix_from_json(j);
}

json matrix_to_flat_json(const ComplexMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out.push_back({round9(m(i, j).real()), round9(m(i, j).imag())});
  return out;
}

json to_json(const RegionLabel& label) {
  json planes = json::array();
  for (BranchPlane p : label.on_branch_boundary) planes.push_back(to_string(p));
  return {{"entanglement_region", to_string(label.entanglement_region)},
          {"discord_branch", to_string(label.discord_branch)},
          {"on_branch_boundary", planes}};
}

json to_json(const CorrelationReport& r) {
  json j = {{"concurrence", round9(r.concurrence)},
            {"eof", round9(r.eof)},
            {"discord", round9(r.discord)},
            {"mutual_information", round9(r.mutual_information)},
            {"classical_correlation", round9(r.classical_correlation)},
            {"source", r.source == ReportSource::Analytic ? "Analytic" : "Numeric"},
            {"converged", r.converged}};
  if (r.discord_branch_values) {
    const auto& v = *r.discord_branch_values;
    j["discord_branch_values"] = {round9(v[0]), round9(v[1]), round9(v[2])};
  }
  if (r.discord_branch) j["discord_branch"] = to_string(*r.discord_branch);
  if (r.region) j["region"] = to_json(*r.region);
  return j;
}

json to_json(const TomographyRun& run) {
  json j = {{"truth", matrix_to_flat_json(run.truth.matrix())},
            {"set", to_string(run.set)},
            {"counts", run.counts},
            {"mean_per_projector", run.mean_per_projector},
            {"seed", run.seed},
            {"reconstructed", matrix_to_flat_json(run.reconstructed.matrix())},
            {"fidelity", round9(run.fidelity)}};
  j["report"] = run.report ? to_json(*run.report) : json(nullptr);
  return j;
}

}  // namespace qcorr
