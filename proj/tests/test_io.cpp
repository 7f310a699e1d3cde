// Serialization round-trips, the inline measure-spec parser, and the CSV
// writer.  Exactness matters here: every float travels as 17 significant
// digits, so parse(print(x)) must reproduce x bit for bit.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "rdiag/errors.hpp"
#include "rdiag/measure.hpp"
#include "rdiag/measure_io.hpp"

using namespace rdiag;

TEST_CASE("format_double: shortest-exact decimal form") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-3.0) == "-3");
  // Smallest normal double; std::stod raises out_of_range on subnormals, so
  // the round-trip check stays inside the normal range.
  for (double v : {1.0 / 3.0, 0.1, 6.02214076e23, 2.2250738585072014e-308,
                   -1.2345678901234567e-100})
    CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("measure JSON round-trips both representations") {
  const Measure atoms = from_atoms({1.0, 2.0, 0.125}, {0.25, 0.5, 0.25});
  const nlohmann::json ja = measure_to_json(atoms);
  CHECK(ja.at("type") == "atoms");
  CHECK(ja.at("atoms").size() == 3);
  const Measure back = measure_from_json(ja);
  const auto& am = std::get<AtomicMeasure>(back);
  const auto& orig = std::get<AtomicMeasure>(atoms);
  REQUIRE(am.size() == orig.size());
  for (std::size_t i = 0; i < am.size(); ++i) {
    CHECK(am.nodes()[i] == orig.nodes()[i]);
    CHECK(am.weights()[i] == orig.weights()[i]);
  }

  const Measure named = named_density(Family::abs_z_pow_n, 3);
  const nlohmann::json jn = measure_to_json(named);
  CHECK(jn.at("type") == "named");
  CHECK(jn.at("family") == "abs_z_pow_n");
  CHECK(jn.at("n") == 3);
  const auto& nd = std::get<NamedDensity>(measure_from_json(jn));
  CHECK(nd.family == Family::abs_z_pow_n);
  CHECK(nd.n == 3);

  // The "n" field is optional and defaults to 1.
  const auto& nd1 = std::get<NamedDensity>(
      measure_from_json({{"type", "named"}, {"family", "abs_x_sq"}}));
  CHECK(nd1.n == 1);
}

TEST_CASE("measure JSON rejects malformed input") {
  CHECK_THROWS_AS(measure_from_json({{"type", "bogus"}}), DomainError);
  CHECK_THROWS_AS(measure_from_json(nlohmann::json::array()), DomainError);
  CHECK_THROWS_AS(measure_from_json({{"type", "atoms"}, {"atoms", {{1.0}}}}),
                  DomainError);
  // Invalid atom data propagates the measure-construction error.
  CHECK_THROWS_AS(
      measure_from_json({{"type", "atoms"}, {"atoms", {{1.0, -0.5}, {2.0, 1.5}}}}),
      DomainError);
  // Missing fields surface as (at least) std::exception.
  CHECK_THROWS_AS(measure_from_json({{"type", "named"}}), std::exception);
}

TEST_CASE("matrix JSON round-trip and validation") {
  ComplexMatrix a(2, 2);
  a << std::complex<double>{1.0, -2.0}, std::complex<double>{0.0, 0.5},
      std::complex<double>{1.0 / 3.0, 0.0}, std::complex<double>{-4.0, 1e-12};
  const nlohmann::json j = matrix_to_json(a);
  CHECK(j.at("n") == 2);
  CHECK(j.at("entries").size() == 4);
  const ComplexMatrix b = matrix_from_json(j);
  CHECK((a - b).norm() == 0.0);

  CHECK_THROWS_AS(matrix_from_json({{"n", 2}, {"entries", {{1.0, 0.0}}}}),
                  DomainError);
  CHECK_THROWS_AS(matrix_from_json({{"entries", nlohmann::json::array()}}),
                  DomainError);
  CHECK_THROWS_AS(matrix_from_json({{"n", 0}, {"entries", nlohmann::json::array()}}),
                  DomainError);
}

TEST_CASE("file loading errors and the measure-spec parser") {
  CHECK_THROWS_AS(load_measure("/nonexistent/measure.json"), DomainError);
  CHECK_THROWS_AS(load_matrix("/nonexistent/matrix.json"), DomainError);

  const auto& nd = std::get<NamedDensity>(parse_measure_spec("named:abs_z_pow_n:3"));
  CHECK(nd.family == Family::abs_z_pow_n);
  CHECK(nd.n == 3);
  CHECK(std::get<NamedDensity>(parse_measure_spec("named:abs_x_sq")).n == 1);

  CHECK_THROWS_AS(parse_measure_spec("named:bogus"), DomainError);
  CHECK_THROWS_AS(parse_measure_spec("named:abs_z_pow_n:x"), DomainError);
  CHECK_THROWS_AS(parse_measure_spec("named:abs_z_pow_n:0"), DomainError);
  CHECK_THROWS_AS(parse_measure_spec(":x"), DomainError);

  // A non-"named:" spec is a file path.
  const std::string path = "io_test_measure.json";
  {
    std::ofstream out(path);
    out << measure_to_json(from_atoms({1.0, 2.0}, {0.5, 0.5})).dump();
  }
  const auto& am = std::get<AtomicMeasure>(parse_measure_spec(path));
  CHECK(am.size() == 2);
  CHECK(am.nodes()[1] == 2.0);
  std::remove(path.c_str());

  // Corrupt JSON file reports its path in a DomainError.
  const std::string bad = "io_test_bad.json";
  {
    std::ofstream out(bad);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_measure(bad), DomainError);
  std::remove(bad.c_str());
}

TEST_CASE("CSV writer emits exact rows and enforces the width") {
  std::ostringstream out;
  CsvWriter csv(out, {"a", "b"});
  csv.row({"x", "y"});
  csv.numeric_row({0.5, 1.0});
  CHECK(out.str() == "a,b\nx,y\n0.5,1\n");
  CHECK_THROWS_AS(csv.row({"only-one"}), DomainError);
  CHECK_THROWS_AS(csv.numeric_row({1.0, 2.0, 3.0}), DomainError);
}
