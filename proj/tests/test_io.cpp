#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "wginv/wginv.hpp"

using namespace wginv;
using fixtures::max_abs_diff;

namespace {

ComplexMatrix sample() {
  ComplexMatrix M(2, 3);
  M << Complex(1, 0), Complex(-2.5, 0.25), Complex(0, 1), Complex(3, -4),
      Complex(0, 0), Complex(1e-3, 7);
  return M;
}

}  // namespace

TEST_CASE("json parsing reads a row-major document") {
  const std::string text = R"({
    "name": "probe",
    "rows": 2,
    "cols": 2,
    "entries": [[1, 0], [2, -1], [0, 0], [3.5, 2]]
  })";
  MatrixDocument doc = parse_matrix(text, MatrixFormat::JSON);
  REQUIRE(doc.matrix.rows() == 2);
  REQUIRE(doc.matrix.cols() == 2);
  CHECK(doc.matrix(0, 0) == Complex(1, 0));
  CHECK(doc.matrix(0, 1) == Complex(2, -1));
  CHECK(doc.matrix(1, 0) == Complex(0, 0));
  CHECK(doc.matrix(1, 1) == Complex(3.5, 2));
  REQUIRE(doc.name.has_value());
  CHECK(*doc.name == "probe");
}

TEST_CASE("json parsing distinguishes parse and shape failures") {
  CHECK_THROWS_AS(parse_matrix("not json", MatrixFormat::JSON), ParseError);
  CHECK_THROWS_AS(parse_matrix("[1,2,3]", MatrixFormat::JSON), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"rows": 2, "cols": 2})", MatrixFormat::JSON), ParseError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"rows": 1, "cols": 1, "entries": [[1, 0], [2, 0]]})",
                   MatrixFormat::JSON),
      ShapeError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"rows": -1, "cols": 1, "entries": []})", MatrixFormat::JSON),
      ShapeError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"rows": 1, "cols": 1, "entries": [[1]]})", MatrixFormat::JSON),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"rows": 1, "cols": 1, "entries": [["x", 0]]})", MatrixFormat::JSON),
      ParseError);
}

TEST_CASE("matrix market coordinate documents densify with 1-based indices") {
  const std::string text =
      "%%MatrixMarket matrix coordinate complex general\n"
      "% free-form comment\n"
      "2 2 2\n"
      "1 1 1.5 -2.5\n"
      "2 1 0 1\n";
  MatrixDocument doc = parse_matrix(text, MatrixFormat::MATRIX_MARKET);
  CHECK(doc.matrix(0, 0) == Complex(1.5, -2.5));
  CHECK(doc.matrix(1, 0) == Complex(0, 1));
  CHECK(doc.matrix(0, 1) == Complex(0, 0));
  CHECK(doc.matrix(1, 1) == Complex(0, 0));
}

TEST_CASE("matrix market array documents run down columns") {
  const std::string text =
      "%%MatrixMarket matrix array real general\n"
      "2 2\n"
      "1\n2\n3\n4\n";
  MatrixDocument doc = parse_matrix(text, MatrixFormat::MATRIX_MARKET);
  CHECK(doc.matrix(0, 0) == Complex(1, 0));
  CHECK(doc.matrix(1, 0) == Complex(2, 0));
  CHECK(doc.matrix(0, 1) == Complex(3, 0));
  CHECK(doc.matrix(1, 1) == Complex(4, 0));

  const std::string ints =
      "%%MatrixMarket matrix array integer general\n"
      "1 2\n"
      "7\n-3\n";
  MatrixDocument di = parse_matrix(ints, MatrixFormat::MATRIX_MARKET);
  CHECK(di.matrix(0, 1) == Complex(-3, 0));
}

TEST_CASE("matrix market rejects malformed documents with located errors") {
  CHECK_THROWS_AS(parse_matrix("", MatrixFormat::MATRIX_MARKET), ParseError);
  CHECK_THROWS_AS(parse_matrix("%%NotMatrixMarket matrix array real general\n1 1\n0\n",
                               MatrixFormat::MATRIX_MARKET),
                  ParseError);
  CHECK_THROWS_AS(
      parse_matrix("%%MatrixMarket matrix array real symmetric\n1 1\n0\n",
                   MatrixFormat::MATRIX_MARKET),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix("%%MatrixMarket matrix array real general\n1 1\n1.2.3\n",
                   MatrixFormat::MATRIX_MARKET),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n",
                   MatrixFormat::MATRIX_MARKET),
      ParseError);
  CHECK_THROWS_AS(
      parse_matrix("%%MatrixMarket matrix array real general\n1 1\n1\n2\n",
                   MatrixFormat::MATRIX_MARKET),
      ShapeError);
  CHECK_THROWS_AS(
      parse_matrix("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5\n",
                   MatrixFormat::MATRIX_MARKET),
      ShapeError);

  try {
    parse_matrix("%%MatrixMarket matrix array real general\n1 1\nbogus\n",
                 MatrixFormat::MATRIX_MARKET);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("serialization round-trips through both formats") {
  ComplexMatrix M = sample();
  for (MatrixFormat format : {MatrixFormat::JSON, MatrixFormat::MATRIX_MARKET}) {
    const std::string text = serialize_matrix(M, format);
    MatrixDocument doc = parse_matrix(text, format);
    CHECK(max_abs_diff(doc.matrix, M) == 0.0);  // full precision survives
  }
}

TEST_CASE("detect_format uses the extension first, then the banner") {
  CHECK(detect_format("m.json", "%%MatrixMarket ...") == MatrixFormat::JSON);
  CHECK(detect_format("m.mtx", "{}") == MatrixFormat::MATRIX_MARKET);
  CHECK(detect_format("m.mm", "{}") == MatrixFormat::MATRIX_MARKET);
  CHECK(detect_format("data", "  \n%%MatrixMarket matrix") == MatrixFormat::MATRIX_MARKET);
  CHECK(detect_format("data", "{\"rows\": 1}") == MatrixFormat::JSON);
}

TEST_CASE("load_matrix_file reads from disk and records the source") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "wginv_io_roundtrip.mtx";
  {
    std::ofstream out(path);
    out << serialize_matrix(sample(), MatrixFormat::MATRIX_MARKET);
  }
  MatrixDocument doc = load_matrix_file(path.string());
  CHECK(max_abs_diff(doc.matrix, sample()) == 0.0);
  REQUIRE(doc.source_path.has_value());
  CHECK(*doc.source_path == path.string());
  fs::remove(path);

  CHECK_THROWS_AS(load_matrix_file("/nonexistent/wginv.json"), InputError);
}

TEST_CASE("fnv1a digest matches the published vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("hello") != fnv1a_hex("hellp"));
}

TEST_CASE("matrix_to_json lists entries row by row") {
  ComplexMatrix M(1, 2);
  M << Complex(1, 2), Complex(3, -4);
  nlohmann::ordered_json doc = matrix_to_json(M);
  CHECK(doc["rows"] == 1);
  CHECK(doc["cols"] == 2);
  CHECK(doc["entries"][0][0] == 1.0);
  CHECK(doc["entries"][0][1] == 2.0);
  CHECK(doc["entries"][1][0] == 3.0);
  CHECK(doc["entries"][1][1] == -4.0);
}

TEST_CASE("suite reports serialize with stable keys") {
  SuiteReport report;
  report.seed = 5;
  report.trials = 2;
  SuiteCheck check;
  check.name = "probe";
  check.pass = 2;
  report.checks.push_back(check);
  nlohmann::ordered_json doc = suite_report_to_json(report);
  CHECK(doc["seed"] == 5);
  CHECK(doc["trials"] == 2);
  CHECK(doc["checks"][0]["name"] == "probe");
  CHECK(doc["all_passed"] == true);
  CHECK(doc.contains("version"));
}
