#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geolat/lattice.hpp"
#include "geolat/operator.hpp"
#include "geolat/spectral.hpp"

namespace geolat {

/// e_(x', x'') <-> e_x' (x) e_x'' for a lattice built by build_product.
struct TensorIdentification {
  std::vector<std::pair<ElementId, ElementId>> forward;
  /// backward[x' * n'' + x''] = id in the product.
  std::vector<ElementId> backward;

  ElementId to_product(ElementId left, ElementId right, std::size_t right_size) const {
    return backward[left * right_size + right];
  }
};

/// Recovers the factor coordinates of every product element from the
/// componentwise order and checks rank additivity. Throws InvalidArgument
/// if the product does not decompose.
TensorIdentification tensor_identification(const FiniteLattice& product, const FiniteLattice& left,
                                           const FiniteLattice& right);

/// H' (x) I + I (x) H'' expressed in product ids.
OperatorMatrix kronecker_sum(const OperatorMatrix& left, const OperatorMatrix& right,
                             const TensorIdentification& identification);

struct KroneckerCheck {
  bool equal = false;
  /// First (row, col) where the direct and Kronecker assemblies differ.
  std::optional<std::pair<ElementId, ElementId>> first_difference;
  std::string detail;
};

/// Builds H on L1 x L2 from its own diamond product and compares it with
/// the Kronecker sum of H(L1) and H(L2), entry for entry.
KroneckerCheck kronecker_sum_check(const FiniteLattice& left, const FiniteLattice& right);

/// Precomputed factors and product for repeated shuffle-formula queries.
class ProductContext {
 public:
  ProductContext(FiniteLattice left, FiniteLattice right);

  const FiniteLattice& left() const { return left_; }
  const FiniteLattice& right() const { return right_; }
  const FiniteLattice& product() const { return product_; }
  const OperatorMatrix& left_hamiltonian() const { return h_left_; }
  const OperatorMatrix& right_hamiltonian() const { return h_right_; }
  const OperatorMatrix& product_hamiltonian() const { return h_product_; }
  const TensorIdentification& identification() const { return identification_; }

 private:
  FiniteLattice left_;
  FiniteLattice right_;
  FiniteLattice product_;
  OperatorMatrix h_left_;
  OperatorMatrix h_right_;
  OperatorMatrix h_product_;
  TensorIdentification identification_;
};

using ElementPair = std::pair<ElementId, ElementId>;

struct ShuffleEntry {
  int d1 = 0;
  int d2 = 0;
  /// C(d, d1) <e_x', H'^d1 e_y'> <e_x'', H''^d2 e_y''>
  Rational formula;
  /// <e_x, H^d e_y> on the product.
  Rational direct;

  int d() const { return d1 + d2; }
};

/// Throws NotComparable unless x <= y componentwise.
ShuffleEntry shuffle_entry(const ProductContext& context, ElementPair x, ElementPair y);
ShuffleEntry shuffle_entry(const FiniteLattice& left, const FiniteLattice& right, ElementPair x, ElementPair y);

/// m_k = sum_j C(k, j) m1_j m2_{k-j} for k = 0..K. Throws
/// InsufficientLength if either input has fewer than K + 1 terms.
MomentSequence convolve_moments(const MomentSequence& first, const MomentSequence& second, int max_k);

/// Atoms at all pairwise sums with product weights; atoms closer than
/// `merge_tolerance` are merged.
SpectralMeasure convolve_measures(const SpectralMeasure& first, const SpectralMeasure& second,
                                  double merge_tolerance = 1e-9);

}  // namespace geolat
