#include "geolat/product.hpp"

#include <algorithm>
#include <cmath>

namespace geolat {

TensorIdentification tensor_identification(const FiniteLattice& product, const FiniteLattice& left,
                                           const FiniteLattice& right) {
  if (product.size() != left.size() * right.size())
    throw LatticeError(ErrorKind::InvalidArgument, "product size does not match its factors");
  const auto n1 = static_cast<ElementId>(left.size());
  const auto n2 = static_cast<ElementId>(right.size());
  // (x', 0'') are the elements below the left top embedded as (1', 0'').
  // Coordinates of x: x' = x ^ (1', 0''), x'' = x ^ (0', 1'').
  const ElementId left_axis = product_id(right, left.top(), right.bottom());
  const ElementId right_axis = product_id(right, left.bottom(), right.top());

  std::vector<ElementId> left_chain(n1), right_chain(n2);
  for (ElementId a = 0; a < n1; ++a) left_chain[a] = product_id(right, a, right.bottom());
  for (ElementId b = 0; b < n2; ++b) right_chain[b] = product_id(right, left.bottom(), b);

  TensorIdentification id;
  id.forward.resize(product.size());
  id.backward.assign(product.size(), static_cast<ElementId>(product.size()));
  for (ElementId x = 0; x < product.size(); ++x) {
    const ElementId on_left = product.meet(x, left_axis);
    const ElementId on_right = product.meet(x, right_axis);
    const auto a = static_cast<ElementId>(std::find(left_chain.begin(), left_chain.end(), on_left) - left_chain.begin());
    const auto b = static_cast<ElementId>(std::find(right_chain.begin(), right_chain.end(), on_right) - right_chain.begin());
    if (a == n1 || b == n2 || product.join(on_left, on_right) != x || product.rank(x) != left.rank(a) + right.rank(b))
      throw LatticeError(ErrorKind::InvalidArgument, "element " + std::to_string(x) + " does not split into factors");
    if (id.backward[a * n2 + b] != product.size())
      throw LatticeError(ErrorKind::InvalidArgument, "factor coordinates are not unique");
    id.forward[x] = {a, b};
    id.backward[a * n2 + b] = x;
  }
  return id;
}

OperatorMatrix kronecker_sum(const OperatorMatrix& left, const OperatorMatrix& right,
                             const TensorIdentification& id) {
  const std::size_t n1 = left.dim();
  const std::size_t n2 = right.dim();
  std::vector<OperatorMatrix::Triplet> entries;
  for (const auto& t : left.triplets())
    for (ElementId b = 0; b < n2; ++b) entries.push_back({id.to_product(t.row, b, n2), id.to_product(t.col, b, n2), t.value});
  for (const auto& t : right.triplets())
    for (ElementId a = 0; a < n1; ++a) entries.push_back({id.to_product(a, t.row, n2), id.to_product(a, t.col, n2), t.value});
  return OperatorMatrix::from_triplets(n1 * n2, std::move(entries));
}

KroneckerCheck kronecker_sum_check(const FiniteLattice& left, const FiniteLattice& right) {
  const ProductContext context(left, right);
  const OperatorMatrix expected =
      kronecker_sum(context.left_hamiltonian(), context.right_hamiltonian(), context.identification());
  const OperatorMatrix& direct = context.product_hamiltonian();

  KroneckerCheck check;
  check.equal = direct == expected;
  if (!check.equal) {
    for (ElementId col = 0; col < direct.dim() && !check.first_difference; ++col)
      for (ElementId row = 0; row < direct.dim(); ++row) {
        const Rational a = direct.entry(row, col), b = expected.entry(row, col);
        if (a != b) {
          check.first_difference = std::make_pair(row, col);
          check.detail = "direct " + to_string(a) + " vs kronecker " + to_string(b);
          break;
        }
      }
  }
  return check;
}

ProductContext::ProductContext(FiniteLattice left, FiniteLattice right)
    : left_(std::move(left)),
      right_(std::move(right)),
      product_(build_product(left_, right_)),
      h_left_(hamiltonian(left_)),
      h_right_(hamiltonian(right_)),
      h_product_(hamiltonian(product_)),
      identification_(tensor_identification(product_, left_, right_)) {}

namespace {

mpz_class binomial(int n, int k) {
  mpz_class value;
  mpz_bin_uiui(value.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return value;
}

}  // namespace

ShuffleEntry shuffle_entry(const ProductContext& ctx, ElementPair x, ElementPair y) {
  const auto& L1 = ctx.left();
  const auto& L2 = ctx.right();
  if (x.first >= L1.size() || y.first >= L1.size() || x.second >= L2.size() || y.second >= L2.size())
    throw LatticeError(ErrorKind::InvalidArgument, "element pair outside the factors");
  if (!L1.leq(x.first, y.first) || !L2.leq(x.second, y.second))
    throw LatticeError(ErrorKind::NotComparable, "x is not below y componentwise");

  ShuffleEntry result;
  result.d1 = L1.rank(y.first) - L1.rank(x.first);
  result.d2 = L2.rank(y.second) - L2.rank(x.second);
  result.formula = Rational(binomial(result.d(), result.d1)) *
                   power_entry(ctx.left_hamiltonian(), x.first, y.first, result.d1) *
                   power_entry(ctx.right_hamiltonian(), x.second, y.second, result.d2);
  const auto& id = ctx.identification();
  result.direct = power_entry(ctx.product_hamiltonian(), id.to_product(x.first, x.second, L2.size()),
                              id.to_product(y.first, y.second, L2.size()), result.d());
  return result;
}

ShuffleEntry shuffle_entry(const FiniteLattice& left, const FiniteLattice& right, ElementPair x, ElementPair y) {
  return shuffle_entry(ProductContext(left, right), x, y);
}

MomentSequence convolve_moments(const MomentSequence& first, const MomentSequence& second, int max_k) {
  if (max_k < 0) throw LatticeError(ErrorKind::InvalidArgument, "moment order must be non-negative");
  const auto needed = static_cast<std::size_t>(max_k) + 1;
  if (first.size() < needed || second.size() < needed)
    throw LatticeError(ErrorKind::InsufficientLength, "moment sequences shorter than order " + std::to_string(max_k));
  MomentSequence out(needed);
  for (int k = 0; k <= max_k; ++k)
    for (int j = 0; j <= k; ++j) out[k] += Rational(binomial(k, j)) * first[j] * second[k - j];
  return out;
}

SpectralMeasure convolve_measures(const SpectralMeasure& first, const SpectralMeasure& second,
                                  double merge_tolerance) {
  std::vector<SpectralAtom> atoms;
  for (const auto& a : first.atoms)
    for (const auto& b : second.atoms) atoms.push_back({a.eigenvalue + b.eigenvalue, a.weight * b.weight});
  std::sort(atoms.begin(), atoms.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) { return a.eigenvalue < b.eigenvalue; });

  SpectralMeasure merged;
  // Greedy chaining: an atom joins the current cluster when it sits within
  // the tolerance of the cluster's first member.
  double anchor = 0.0;
  double weighted = 0.0;
  for (const auto& atom : atoms) {
    if (!merged.atoms.empty() && atom.eigenvalue - anchor < merge_tolerance) {
      auto& last = merged.atoms.back();
      weighted += atom.eigenvalue * atom.weight;
      last.weight += atom.weight;
      last.eigenvalue = last.weight > 0 ? weighted / last.weight : anchor;
    } else {
      merged.atoms.push_back(atom);
      anchor = atom.eigenvalue;
      weighted = atom.eigenvalue * atom.weight;
    }
  }
  return merged;
}

}  // namespace geolat
