#include "rdiag/measure_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rdiag/errors.hpp"

namespace rdiag {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Measure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw DomainError("measure JSON: expected an object with a 'type' field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "atoms") {
    std::vector<double> nodes, weights;
    for (const auto& pair : j.at("atoms")) {
      if (!pair.is_array() || pair.size() != 2)
        throw DomainError("measure JSON: each atom must be [node, weight]");
      nodes.push_back(pair.at(0).get<double>());
      weights.push_back(pair.at(1).get<double>());
    }
    return from_atoms(nodes, weights);
  }
  if (type == "named") {
    const Family family = parse_family(j.at("family").get<std::string>());
    const int n = j.value("n", 1);
    return named_density(family, n);
  }
  throw DomainError("measure JSON: unknown type '" + type + "'");
}

nlohmann::json measure_to_json(const Measure& mu) {
  if (const auto* am = std::get_if<AtomicMeasure>(&mu)) {
    nlohmann::json atoms = nlohmann::json::array();
    for (std::size_t i = 0; i < am->size(); ++i)
      atoms.push_back({am->nodes()[i], am->weights()[i]});
    return {{"type", "atoms"}, {"atoms", std::move(atoms)}};
  }
  const auto& d = std::get<NamedDensity>(mu);
  return {{"type", "named"}, {"family", family_name(d.family)}, {"n", d.n}};
}

namespace {

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace

Measure load_measure(const std::string& path) {
  try {
    return measure_from_json(parse_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("bad measure JSON in " + path + ": " + e.what());
  }
}

Measure parse_measure_spec(const std::string& spec) {
  constexpr const char* prefix = "named:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string rest = spec.substr(6);
    const std::size_t colon = rest.find(':');
    const std::string family = rest.substr(0, colon);
    int n = 1;
    if (colon != std::string::npos) {
      try {
        std::size_t used = 0;
        n = std::stoi(rest.substr(colon + 1), &used);
        if (used != rest.size() - colon - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw DomainError("bad order in measure spec: " + spec);
      }
    }
    return named_density(parse_family(family), n);
  }
  return load_measure(spec);
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw DomainError("matrix JSON: expected {\"n\":N,\"entries\":[[re,im],...]}");
  const int n = j.at("n").get<int>();
  if (n < 1) throw DomainError("matrix JSON: n must be >= 1");
  const auto& entries = j.at("entries");
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DomainError("matrix JSON: entries must hold n*n [re,im] pairs");
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto& cell = entries.at(static_cast<std::size_t>(i) * n + k);
      if (!cell.is_array() || cell.size() != 2)
        throw DomainError("matrix JSON: each entry must be [re, im]");
      a(i, k) = {cell.at(0).get<double>(), cell.at(1).get<double>()};
    }
  }
  return a;
}

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      entries.push_back({a(i, k).real(), a(i, k).imag()});
  return {{"n", static_cast<int>(a.rows())}, {"entries", std::move(entries)}};
}

ComplexMatrix load_matrix(const std::string& path) {
  try {
    return matrix_from_json(parse_json_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("bad matrix JSON in " + path + ": " + e.what());
  }
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw DomainError("CSV row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::numeric_row(const std::vector<double>& cells) {
  std::vector<std::string> text(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) text[i] = format_double(cells[i]);
  row(text);
}

}  // namespace rdiag
