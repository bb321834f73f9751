#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geolat/lattice.hpp"
#include "geolat/operator.hpp"
#include "geolat/rational.hpp"

namespace geolat {

struct RankLayers {
  int r = 0;
  /// n_k for k = 0..r.
  std::vector<std::size_t> sizes;

  std::size_t total() const;
  friend bool operator==(const RankLayers&, const RankLayers&) = default;
};

/// Radial compression data. Everything exact is kept squared so no square
/// roots enter; `beta` is the floating-point view.
struct JacobiData {
  int r = 0;
  RankLayers layers;
  /// W_k = sum over covers x < y with rk(x) = k of (a(y) - a(x)).
  std::vector<std::int64_t> cover_weights;
  std::vector<Rational> beta_sq;
  std::vector<double> beta;

  /// Exact comparison of r and beta_sq.
  bool same_coefficients(const JacobiData& other) const { return r == other.r && beta_sq == other.beta_sq; }
};

/// Jacobi data from given beta_k^2 alone (layers and W left empty).
JacobiData jacobi_from_beta_sq(std::vector<Rational> beta_sq);

RankLayers rank_layers(const FiniteLattice& lattice);

/// W_0 .. W_{r-1}, grouped by the rank of the lower element.
std::vector<std::int64_t> cover_weight_sums(const FiniteLattice& lattice);

/// beta_k^2 = W_k^2 / (4 n_k n_{k+1}).
JacobiData jacobi_from_formula(const FiniteLattice& lattice);

/// beta_k^2 = <s_k, H s_{k+1}>^2 / (n_k n_{k+1}) with unnormalized layer
/// sums s_k. Throws NonzeroDiagonal if any <s_k, H s_j> with j != k +- 1
/// is nonzero.
JacobiData jacobi_from_compression(const FiniteLattice& lattice, const OperatorMatrix& hamiltonian);

/// Block sums <s_i, H s_j> for all rank pairs; entry [i][j].
std::vector<std::vector<Rational>> layer_block_sums(const FiniteLattice& lattice, const OperatorMatrix& hamiltonian);

struct InvarianceReport {
  bool invariant = true;
  std::optional<int> failing_level;
  /// Elements where H s_k is not constant on its layer, for the first
  /// failing level.
  std::vector<ElementId> residual_support;
};

/// Exact test that H s_k lies in span{s_{k-1}, s_{k+1}} for every k.
InvarianceReport radial_invariance(const FiniteLattice& lattice, const OperatorMatrix& hamiltonian);

}  // namespace geolat
