#include "wginv/io.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wginv/errors.hpp"

namespace wginv {

namespace {

MatrixDocument parse_json_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("json: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("entries")) {
    throw ParseError("json: expected an object with rows, cols and entries");
  }
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  try {
    rows = doc.at("rows").get<Eigen::Index>();
    cols = doc.at("cols").get<Eigen::Index>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("json: rows/cols must be integers: " + std::string(e.what()));
  }
  if (rows < 0 || cols < 0) throw ShapeError("json: negative dimensions");
  const auto& entries = doc.at("entries");
  if (!entries.is_array()) throw ParseError("json: entries must be an array");
  if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
    throw ShapeError("json: entry count does not match rows*cols");
  }
  MatrixDocument out;
  out.matrix = ComplexMatrix::Zero(rows, cols);
  Eigen::Index k = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("json: each entry must be a [re, im] pair of numbers");
    }
    out.matrix(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
    ++k;
  }
  if (doc.contains("name") && doc.at("name").is_string()) {
    out.name = doc.at("name").get<std::string>();
  }
  return out;
}

struct MmToken {
  std::string text;
  int line = 0;
};

MatrixDocument parse_mm_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix") {
    throw ParseError("matrix market: bad banner on line 1");
  }
  if (layout != "array" && layout != "coordinate") {
    throw ParseError("matrix market: layout must be array or coordinate (line 1)");
  }
  if (field != "complex" && field != "real" && field != "integer") {
    throw ParseError("matrix market: field must be complex, real or integer (line 1)");
  }
  if (symmetry != "general") {
    throw ParseError("matrix market: only general symmetry is supported (line 1)");
  }

  std::vector<MmToken> tokens;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '%') continue;
    std::istringstream ls(line.substr(start));
    std::string tok;
    while (ls >> tok) tokens.push_back({tok, lineno});
  }
  std::size_t pos = 0;
  auto take_long = [&](const char* what) -> long long {
    if (pos >= tokens.size()) throw ParseError(std::string("matrix market: missing ") + what);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tokens[pos].text, &used);
      if (used != tokens[pos].text.size()) throw std::invalid_argument("trailing junk");
      ++pos;
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("matrix market: bad ") + what + " on line " +
                       std::to_string(tokens[pos].line));
    }
  };
  auto take_double = [&](const char* what) -> double {
    if (pos >= tokens.size()) throw ParseError(std::string("matrix market: missing ") + what);
    try {
      std::size_t used = 0;
      const double v = std::stod(tokens[pos].text, &used);
      if (used != tokens[pos].text.size()) throw std::invalid_argument("trailing junk");
      ++pos;
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("matrix market: bad ") + what + " on line " +
                       std::to_string(tokens[pos].line));
    }
  };

  const long long rows = take_long("row count");
  const long long cols = take_long("column count");
  if (rows < 0 || cols < 0) throw ShapeError("matrix market: negative dimensions");

  MatrixDocument out;
  out.matrix = ComplexMatrix::Zero(rows, cols);

  if (layout == "array") {
    const long long expected = rows * cols;
    for (long long k = 0; k < expected; ++k) {
      const double re = take_double("value");
      const double im = (field == "complex") ? take_double("imaginary part") : 0.0;
      // array layout runs down columns
      out.matrix(k % rows, k / rows) = Complex(re, im);
    }
    if (pos != tokens.size()) throw ShapeError("matrix market: trailing values");
  } else {
    const long long nnz = take_long("entry count");
    for (long long k = 0; k < nnz; ++k) {
      const long long i = take_long("row index");
      const long long j = take_long("column index");
      const double re = take_double("value");
      const double im = (field == "complex") ? take_double("imaginary part") : 0.0;
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ShapeError("matrix market: entry index out of range");
      }
      out.matrix(i - 1, j - 1) = Complex(re, im);
    }
    if (pos != tokens.size()) throw ShapeError("matrix market: trailing values");
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

MatrixDocument parse_matrix(const std::string& text, MatrixFormat format) {
  return format == MatrixFormat::JSON ? parse_json_matrix(text) : parse_mm_matrix(text);
}

std::string serialize_matrix(const ComplexMatrix& M, MatrixFormat format) {
  if (format == MatrixFormat::JSON) {
    nlohmann::ordered_json doc = matrix_to_json(M);
    return doc.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "%%MatrixMarket matrix array complex general\n";
  os << M.rows() << " " << M.cols() << "\n";
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      os << format_double(M(i, j).real()) << " " << format_double(M(i, j).imag()) << "\n";
    }
  }
  return os.str();
}

MatrixFormat detect_format(const std::string& path, const std::string& text) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".json")) return MatrixFormat::JSON;
  if (ends_with(".mtx") || ends_with(".mm")) return MatrixFormat::MATRIX_MARKET;
  const std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text.compare(start, 2, "%%") == 0) {
    return MatrixFormat::MATRIX_MARKET;
  }
  return MatrixFormat::JSON;
}

MatrixDocument load_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  MatrixDocument doc = parse_matrix(text, detect_format(path, text));
  doc.source_path = path;
  return doc;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << h;
  return os.str();
}

nlohmann::ordered_json matrix_to_json(const ComplexMatrix& M) {
  nlohmann::ordered_json doc;
  doc["rows"] = M.rows();
  doc["cols"] = M.cols();
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      entries.push_back({M(i, j).real(), M(i, j).imag()});
    }
  }
  doc["entries"] = std::move(entries);
  return doc;
}

nlohmann::ordered_json suite_report_to_json(const SuiteReport& report) {
  nlohmann::ordered_json doc;
  doc["version"] = kVersion;
  doc["seed"] = report.seed;
  doc["trials"] = report.trials;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json row;
    row["name"] = c.name;
    row["pass"] = c.pass;
    row["fail"] = c.fail;
    row["max_residual"] = c.max_residual;
    checks.push_back(std::move(row));
  }
  doc["checks"] = std::move(checks);
  doc["all_passed"] = report.all_passed();
  return doc;
}

}
