#include "geolat/operator.hpp"

#include <algorithm>

namespace geolat {

DiamondResult diamond(const FiniteLattice& L, ElementId x, ElementId y) {
  if (L.meet(x, y) != L.bottom()) return {};
  return {L.join(x, y)};
}

DiamondResult diamond(const FiniteLattice& L, DiamondResult x, DiamondResult y) {
  if (x.is_zero() || y.is_zero()) return {};
  return diamond(L, *x.value, *y.value);
}

std::optional<Triple> nonassociativity_witness(const FiniteLattice& L) {
  const auto n = static_cast<ElementId>(L.size());
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y < n; ++y) {
      const DiamondResult xy = diamond(L, x, y);
      for (ElementId z = 0; z < n; ++z) {
        const DiamondResult left = diamond(L, xy, DiamondResult{z});
        const DiamondResult right = diamond(L, DiamondResult{x}, diamond(L, y, z));
        if (left != right) return Triple{x, y, z};
      }
    }
  return std::nullopt;
}

OperatorMatrix OperatorMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  OperatorMatrix m(dim);
  for (auto& t : triplets) {
    if (t.row >= dim || t.col >= dim)
      throw LatticeError(ErrorKind::DimensionMismatch, "triplet outside the matrix");
    auto& column = m.columns_[t.col];
    if (!column.empty() && column.back().first == t.row) {
      column.back().second += t.value;
    } else {
      column.emplace_back(t.row, std::move(t.value));
    }
  }
  for (auto& column : m.columns_)
    std::erase_if(column, [](const Entry& e) { return e.second == 0; });
  m.refresh_symmetry();
  return m;
}

Rational OperatorMatrix::entry(ElementId row, ElementId col) const {
  const auto& column = columns_[col];
  const auto it = std::lower_bound(column.begin(), column.end(), row,
                                   [](const Entry& e, ElementId r) { return e.first < r; });
  return it != column.end() && it->first == row ? it->second : Rational(0);
}

std::size_t OperatorMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& column : columns_) total += column.size();
  return total;
}

std::vector<OperatorMatrix::Triplet> OperatorMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nonzeros());
  for (ElementId col = 0; col < columns_.size(); ++col)
    for (const auto& [row, value] : columns_[col]) out.push_back({row, col, value});
  return out;
}

OperatorMatrix OperatorMatrix::transpose() const {
  auto entries = triplets();
  for (auto& t : entries) std::swap(t.row, t.col);
  return from_triplets(dim(), std::move(entries));
}

OperatorMatrix OperatorMatrix::scaled(const Rational& factor) const {
  auto entries = triplets();
  for (auto& t : entries) t.value *= factor;
  return from_triplets(dim(), std::move(entries));
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw LatticeError(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  auto entries = a.triplets();
  auto more = b.triplets();
  entries.insert(entries.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  return OperatorMatrix::from_triplets(a.dim(), std::move(entries));
}

void OperatorMatrix::refresh_symmetry() {
  symmetric_ = true;
  for (ElementId col = 0; col < columns_.size() && symmetric_; ++col)
    for (const auto& [row, value] : columns_[col])
      if (entry(col, row) != value) {
        symmetric_ = false;
        break;
      }
}

namespace {

void require_atom(const FiniteLattice& L, ElementId a) {
  if (a >= L.size() || !L.is_atom(a))
    throw LatticeError(ErrorKind::NotAtom, "element " + std::to_string(a) + " is not an atom");
}

}  // namespace

OperatorMatrix creation_operator(const FiniteLattice& L, ElementId a) {
  require_atom(L, a);
  std::vector<OperatorMatrix::Triplet> entries;
  for (ElementId x = 0; x < L.size(); ++x) {
    const auto product = diamond(L, a, x);
    if (!product.is_zero()) entries.push_back({*product.value, x, Rational(1)});
  }
  return OperatorMatrix::from_triplets(L.size(), std::move(entries));
}

OperatorMatrix annihilation_operator(const FiniteLattice& L, ElementId a) {
  require_atom(L, a);
  const auto n = static_cast<ElementId>(L.size());
  std::vector<OperatorMatrix::Triplet> entries;
  if (L.has_tables()) {
    for (ElementId y = 0; y < n; ++y)
      for (ElementId x = 0; x < n; ++x)
        if (L.join(x, a) == y && L.meet(a, x) == L.bottom()) entries.push_back({x, y, Rational(1)});
  } else {
    // Without tables, only lower covers of y can satisfy x v a = y.
    std::vector<std::vector<ElementId>> covers_down(n);
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y : L.covers_up(x)) covers_down[y].push_back(x);
    for (ElementId y = 0; y < n; ++y)
      for (ElementId x : covers_down[y])
        if (L.join(x, a) == y && L.meet(a, x) == L.bottom()) entries.push_back({x, y, Rational(1)});
  }
  return OperatorMatrix::from_triplets(n, std::move(entries));
}

OperatorMatrix hamiltonian(const FiniteLattice& L) {
  std::vector<OperatorMatrix::Triplet> entries;
  for (ElementId a : L.atoms()) {
    for (auto& t : creation_operator(L, a).triplets()) entries.push_back({t.row, t.col, t.value / 2});
    for (auto& t : annihilation_operator(L, a).triplets()) entries.push_back({t.row, t.col, t.value / 2});
  }
  return OperatorMatrix::from_triplets(L.size(), std::move(entries));
}

OperatorMatrix hamiltonian_from_covers(const FiniteLattice& L) {
  std::vector<int> atoms_below(L.size());
  for (ElementId x = 0; x < L.size(); ++x) atoms_below[x] = count_atoms_below(L, x);
  std::vector<OperatorMatrix::Triplet> entries;
  for (ElementId x = 0; x < L.size(); ++x)
    for (ElementId y : L.covers_up(x)) {
      const Rational weight = Rational(atoms_below[y] - atoms_below[x]) / 2;
      entries.push_back({y, x, weight});
      entries.push_back({x, y, weight});
    }
  return OperatorMatrix::from_triplets(L.size(), std::move(entries));
}

RationalVector apply(const OperatorMatrix& M, const RationalVector& v) {
  if (v.size() != M.dim())
    throw LatticeError(ErrorKind::DimensionMismatch, "vector has " + std::to_string(v.size()) +
                                                         " entries, operator acts on " + std::to_string(M.dim()));
  RationalVector out(M.dim());
  for (ElementId col = 0; col < M.dim(); ++col) {
    if (v[col] == 0) continue;
    for (const auto& [row, value] : M.column(col)) out[row] += value * v[col];
  }
  return out;
}

RationalVector basis_vector(std::size_t dim, ElementId x) {
  RationalVector v(dim);
  v[x] = 1;
  return v;
}

Rational power_entry(const OperatorMatrix& M, ElementId row, ElementId col, int power) {
  RationalVector v = basis_vector(M.dim(), col);
  for (int i = 0; i < power; ++i) v = geolat::apply(M, v);
  return v[row];
}

}  // namespace geolat
