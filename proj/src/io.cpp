#include "geolat/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace geolat::io {

Json operator_to_json(const OperatorMatrix& matrix) {
  Json doc;
  doc["dim"] = matrix.dim();
  Json entries = Json::array();
  for (const auto& t : matrix.triplets()) entries.push_back({t.row, t.col, to_string(t.value)});
  doc["entries"] = std::move(entries);
  return doc;
}

OperatorMatrix operator_from_json(const Json& doc) {
  try {
    const auto dim = doc.at("dim").get<std::size_t>();
    std::vector<OperatorMatrix::Triplet> entries;
    for (const auto& e : doc.at("entries"))
      entries.push_back({e.at(0).get<ElementId>(), e.at(1).get<ElementId>(), parse_rational(e.at(2).get<std::string>())});
    return OperatorMatrix::from_triplets(dim, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(ErrorKind::ParseError, std::string("bad operator document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw LatticeError(ErrorKind::ParseError, e.what());
  }
}

Json measure_to_json(const SpectralMeasure& measure) {
  Json atoms = Json::array();
  for (const auto& atom : measure.atoms) atoms.push_back({atom.eigenvalue, atom.weight});
  return Json{{"atoms", std::move(atoms)}};
}

SpectralMeasure measure_from_json(const Json& doc) {
  try {
    SpectralMeasure measure;
    for (const auto& atom : doc.at("atoms")) measure.atoms.push_back({atom.at(0).get<double>(), atom.at(1).get<double>()});
    std::sort(measure.atoms.begin(), measure.atoms.end(),
              [](const SpectralAtom& a, const SpectralAtom& b) { return a.eigenvalue < b.eigenvalue; });
    return measure;
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(ErrorKind::ParseError, std::string("bad measure document: ") + e.what());
  }
}

Json jacobi_to_json(const JacobiData& jacobi, const InvarianceReport* invariance, int digits) {
  Json doc;
  doc["r"] = jacobi.r;
  Json levels = Json::array();
  for (int k = 0; k < jacobi.r; ++k) {
    Json level;
    level["k"] = k;
    if (!jacobi.layers.sizes.empty()) level["n_k"] = jacobi.layers.sizes[k];
    if (!jacobi.cover_weights.empty()) level["W_k"] = jacobi.cover_weights[k];
    level["beta_sq"] = to_string(jacobi.beta_sq[k]);
    level["beta"] = format_float(jacobi.beta[k], digits);
    levels.push_back(std::move(level));
  }
  doc["levels"] = std::move(levels);
  if (!jacobi.layers.sizes.empty()) doc["layer_sizes"] = jacobi.layers.sizes;
  if (invariance) {
    doc["radially_invariant"] = invariance->invariant;
    if (invariance->failing_level) doc["failing_level"] = *invariance->failing_level;
  }
  return doc;
}

Json resolvent_to_json(const RationalFunction& g) {
  return Json{{"numerator", g.numerator().coefficient_strings()}, {"denominator", g.denominator().coefficient_strings()}};
}

Json moments_to_json(const MomentSequence& moments) {
  Json values = Json::array();
  for (const auto& m : moments) values.push_back(to_string(m));
  return Json{{"moments", std::move(values)}};
}

Json report_to_json(const ValidationReport& report, const FiniteLattice& lattice) {
  Json doc;
  doc["family"] = lattice.family_tag();
  doc["elements"] = lattice.size();
  doc["top_rank"] = lattice.top_rank();
  Json checks = Json::array();
  for (const auto& check : report.checks) {
    Json c{{"name", check.name}, {"passed", check.passed}, {"exhaustive", check.exhaustive}};
    if (check.counterexample)
      c["counterexample"] = {lattice.label(check.counterexample->first), lattice.label(check.counterexample->second)};
    if (!check.note.empty()) c["note"] = check.note;
    checks.push_back(std::move(c));
  }
  doc["checks"] = std::move(checks);
  doc["is_geometric"] = report.is_geometric;
  doc["is_semimodular_atomic"] = report.is_semimodular_atomic;
  if (!report.note.empty()) doc["note"] = report.note;
  return doc;
}

std::string format_float(double value, int significant_digits) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", significant_digits, value);
  return buffer;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LatticeError(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw LatticeError(ErrorKind::InvalidArgument, "cannot write " + path);
  out << content;
}

}  // namespace geolat::io
