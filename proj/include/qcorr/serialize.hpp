#pragma once

// JSON and text encodings shared by the command-line tool.

#include <string>

#include <json.hpp>

#include "qcorr/correlations.hpp"
#include "qcorr/qmat.hpp"
#include "qcorr/tomography.hpp"

namespace qcorr {

/// printf "%.9g".
std::string format_number(double x);
/// x rounded to 9 significant digits.
double round9(double x);

/// 4 arrays of 4 [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// Inverse of matrix_to_json for any square size 1..4. Throws ParseError on
/// malformed input.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
/// Reads and parses a matrix file.
ComplexMatrix read_matrix_file(const std::string& path);

/// 16 [re, im] pairs in row-major order.
nlohmann::json matrix_to_flat_json(const ComplexMatrix& m);

nlohmann::json to_json(const RegionLabel& label);
nlohmann::json to_json(const CorrelationReport& report);
nlohmann::json to_json(const TomographyRun& run);

}  // namespace qcorr
