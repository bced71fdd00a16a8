#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "wginv/context.hpp"
#include "wginv/generator.hpp"

namespace wginv {

enum class MatrixFormat { JSON, MATRIX_MARKET };

struct MatrixDocument {
  ComplexMatrix matrix;
  std::optional<std::string> name;
  std::optional<std::string> source_path;
};

MatrixDocument parse_matrix(const std::string& text, MatrixFormat format);

std::string serialize_matrix(const ComplexMatrix& M, MatrixFormat format);

// Guesses the format from the file extension and the leading bytes.
MatrixFormat detect_format(const std::string& path, const std::string& text);

MatrixDocument load_matrix_file(const std::string& path);

// Stable content digest used in report headers.
std::string fnv1a_hex(const std::string& data);

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& M);

nlohmann::ordered_json suite_report_to_json(const SuiteReport& report);

}
