#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geolat/lattice.hpp"

namespace geolat {

/// Raw content of a custom lattice document before any order checks.
struct CustomLatticeData {
  std::vector<std::string> labels;
  /// Cover pairs (lo, hi). When `is_order` is set these are arbitrary
  /// order relations x <= y and get transitively reduced.
  std::vector<std::pair<ElementId, ElementId>> relations;
  bool is_order = false;
};

/// Reads `{ "elements": [{"id", "label"}], "covers": [[lo, hi], ...] }`;
/// `"order"` may replace `"covers"`. Throws LatticeError(ParseError).
CustomLatticeData parse_custom_document(const std::string& text);

/// Ranks come from cover chains. Throws NoBottom, NoTop, NotPoset,
/// NotGraded or NotLattice with a message naming the offending elements.
FiniteLattice lattice_from_covers(const CustomLatticeData& data, const BuildOptions& options = {});

struct ParsedLattice {
  FiniteLattice lattice;
  ValidationReport report;
};

ParsedLattice parse_lattice(const std::string& text, const BuildOptions& options = {});

/// Inverse of parse_custom_document: elements with labels and all covers.
std::string serialize_lattice(const FiniteLattice& lattice);

/// Largest custom lattice accepted; order checks keep n x n bitsets.
inline constexpr std::size_t kCustomLatticeLimit = 4096;

}  // namespace geolat
