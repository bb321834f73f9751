#pragma once

// Structured-text (JSON) encodings for the CLI and for downstream tools.
// Exact rationals are always written as "p/q" strings.

#include <json.hpp>
#include <string>

#include "geolat/lattice.hpp"
#include "geolat/operator.hpp"
#include "geolat/polynomial.hpp"
#include "geolat/radial.hpp"
#include "geolat/spectral.hpp"

namespace geolat::io {

using Json = nlohmann::ordered_json;

/// `{ "dim": n, "entries": [[row, col, "p/q"], ...] }` sorted by (col, row).
Json operator_to_json(const OperatorMatrix& matrix);
OperatorMatrix operator_from_json(const Json& doc);

Json measure_to_json(const SpectralMeasure& measure);
/// Accepts `{ "atoms": [[eigenvalue, weight], ...] }`.
SpectralMeasure measure_from_json(const Json& doc);

Json jacobi_to_json(const JacobiData& jacobi, const InvarianceReport* invariance = nullptr, int digits = 12);
Json resolvent_to_json(const RationalFunction& g);
Json moments_to_json(const MomentSequence& moments);
Json report_to_json(const ValidationReport& report, const FiniteLattice& lattice);

/// printf("%.*g") of a double.
std::string format_float(double value, int significant_digits = 12);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace geolat::io
