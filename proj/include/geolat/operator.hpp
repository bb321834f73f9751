#pragma once

#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "geolat/lattice.hpp"
#include "geolat/rational.hpp"

namespace geolat {

/// Value of x <> y: a lattice element, or the algebra zero (empty). The
/// algebra zero is not the bottom; the bottom is the unit.
struct DiamondResult {
  std::optional<ElementId> value;

  bool is_zero() const { return !value.has_value(); }
  friend bool operator==(const DiamondResult&, const DiamondResult&) = default;
};

/// x v y when x ^ y is the bottom, otherwise zero.
DiamondResult diamond(const FiniteLattice& lattice, ElementId x, ElementId y);

/// Zero absorbs: zero <> y = zero.
DiamondResult diamond(const FiniteLattice& lattice, DiamondResult x, DiamondResult y);

struct Triple {
  ElementId x, y, z;
};

/// First (x, y, z) in id order with (x<>y)<>z != x<>(y<>z), if any.
std::optional<Triple> nonassociativity_witness(const FiniteLattice& lattice);

/// Square sparse matrix over the rationals, stored by column with rows
/// sorted and only nonzero entries kept.
class OperatorMatrix {
 public:
  using Entry = std::pair<ElementId, Rational>;
  struct Triplet {
    ElementId row;
    ElementId col;
    Rational value;
  };

  explicit OperatorMatrix(std::size_t dim = 0) : columns_(dim) {}

  /// Duplicate (row, col) pairs are summed; zero sums are dropped.
  static OperatorMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);

  std::size_t dim() const { return columns_.size(); }
  std::span<const Entry> column(ElementId col) const { return columns_[col]; }
  Rational entry(ElementId row, ElementId col) const;
  std::size_t nonzeros() const;
  bool is_symmetric() const { return symmetric_; }

  OperatorMatrix transpose() const;
  OperatorMatrix scaled(const Rational& factor) const;
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) { return a.columns_ == b.columns_; }

  /// All stored entries in (col, row) order.
  std::vector<Triplet> triplets() const;

 private:
  void refresh_symmetry();

  std::vector<std::vector<Entry>> columns_;
  bool symmetric_ = true;
};

/// L_a: column x holds a single 1 at row a <> x, or nothing when that is zero.
OperatorMatrix creation_operator(const FiniteLattice& lattice, ElementId atom);

/// L_a^t from the sum over x with x v a = y and a ^ x = bottom, assembled
/// without transposing L_a.
OperatorMatrix annihilation_operator(const FiniteLattice& lattice, ElementId atom);

/// H = sum over atoms of (L_a + L_a^t) / 2, assembled atom by atom.
OperatorMatrix hamiltonian(const FiniteLattice& lattice);

/// Same H from cover counting: the entry at a cover x < y is (a(y) - a(x)) / 2.
OperatorMatrix hamiltonian_from_covers(const FiniteLattice& lattice);

/// Exact sparse product M v. Throws DimensionMismatch.
RationalVector apply(const OperatorMatrix& matrix, const RationalVector& v);

RationalVector basis_vector(std::size_t dim, ElementId x);

/// <e_row, M^power e_col> by repeated sparse application.
Rational power_entry(const OperatorMatrix& matrix, ElementId row, ElementId col, int power);

}  // namespace geolat
