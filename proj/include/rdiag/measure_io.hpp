#pragma once

// JSON (de)serialization of measures and matrices, the CSV writer used by
// the command-line tool, and full-precision number formatting.  All floats
// are emitted with 17 significant digits so round-trips are exact.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdiag/matrix_lab.hpp"
#include "rdiag/measure.hpp"

namespace rdiag {

// Shortest-exact decimal form ("%.17g").
std::string format_double(double v);

// Measure JSON:
//   {"type":"atoms","atoms":[[t,w],...]}                  (sorted atoms)
//   {"type":"named","family":"abs_z_pow_n","n":2}
Measure measure_from_json(const nlohmann::json& j);
nlohmann::json measure_to_json(const Measure& mu);
Measure load_measure(const std::string& path);

// Accepts either inline "named:<family>:<n>" (n optional, default 1) or a
// path to a measure JSON file.
Measure parse_measure_spec(const std::string& spec);

// Matrix JSON: {"n":N,"entries":[[re,im],...]} in row-major order.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix load_matrix(const std::string& path);

// Minimal CSV emitter: one header row, then data rows; numeric cells go
// through format_double.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void numeric_row(const std::vector<double>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace rdiag
