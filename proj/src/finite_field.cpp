#include "finite_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geolat::detail {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int q) : q_(q), inverse_(static_cast<std::size_t>(q), 0) {
  if (!is_prime(q) || q > 251) throw std::invalid_argument("field order must be a prime below 256");
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if ((a * b) % q == 1) inverse_[a] = static_cast<std::uint8_t>(b);
}

std::vector<FqRow> PrimeField::rref(std::vector<FqRow> rows) const {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
    std::size_t found = pivot_row;
    while (found < rows.size() && rows[found][col] == 0) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    const std::uint8_t scale = inv(rows[pivot_row][col]);
    for (auto& entry : rows[pivot_row]) entry = mul(entry, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pivot_row || rows[i][col] == 0) continue;
      const std::uint8_t factor = rows[i][col];
      for (std::size_t j = 0; j < cols; ++j)
        rows[i][j] = sub(rows[i][j], mul(factor, rows[pivot_row][j]));
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);
  return rows;
}

std::vector<FqRow> PrimeField::orthogonal(const std::vector<FqRow>& basis, int dim) const {
  const auto reduced = rref(basis);
  std::vector<int> pivot_of_col(static_cast<std::size_t>(dim), -1);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const auto it = std::find_if(reduced[i].begin(), reduced[i].end(), [](auto v) { return v != 0; });
    pivot_of_col[static_cast<std::size_t>(it - reduced[i].begin())] = static_cast<int>(i);
  }
  std::vector<FqRow> result;
  for (int free = 0; free < dim; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    FqRow v(static_cast<std::size_t>(dim), 0);
    v[free] = 1;
    for (int col = 0; col < dim; ++col) {
      const int row = pivot_of_col[col];
      if (row >= 0) v[col] = sub(0, reduced[row][free]);
    }
    result.push_back(std::move(v));
  }
  return rref(std::move(result));
}

std::vector<FqRow> PrimeField::sum(const std::vector<FqRow>& a, const std::vector<FqRow>& b) const {
  std::vector<FqRow> rows = a;
  rows.insert(rows.end(), b.begin(), b.end());
  return rref(std::move(rows));
}

std::vector<FqRow> PrimeField::intersect(const std::vector<FqRow>& a, const std::vector<FqRow>& b,
                                         int dim) const {
  return orthogonal(sum(orthogonal(a, dim), orthogonal(b, dim)), dim);
}

namespace {

void choose_pivots(int dim, int k, int start, std::vector<int>& current,
                   std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (int c = start; c < dim; ++c) {
    current.push_back(c);
    choose_pivots(dim, k, c + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<FqRow>> PrimeField::subspaces(int dim, int k) const {
  std::vector<std::vector<int>> pivot_sets;
  std::vector<int> current;
  choose_pivots(dim, k, 0, current, pivot_sets);

  std::vector<std::vector<FqRow>> result;
  for (const auto& pivots : pivot_sets) {
    // Free slots: (row, col) with col > pivot[row] and col not a pivot column.
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < k; ++i)
      for (int c = pivots[i] + 1; c < dim; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) slots.emplace_back(i, c);

    std::vector<int> digits(slots.size(), 0);
    while (true) {
      std::vector<FqRow> basis(static_cast<std::size_t>(k), FqRow(static_cast<std::size_t>(dim), 0));
      for (int i = 0; i < k; ++i) basis[i][pivots[i]] = 1;
      for (std::size_t s = 0; s < slots.size(); ++s)
        basis[slots[s].first][slots[s].second] = static_cast<std::uint8_t>(digits[s]);
      result.push_back(std::move(basis));

      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == q_) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) { return subspace_key(a) < subspace_key(b); });
  return result;
}

std::string subspace_key(const std::vector<FqRow>& basis) {
  std::string key;
  for (const auto& row : basis) key.append(row.begin(), row.end());
  return key;
}

std::string subspace_label(const std::vector<FqRow>& basis) {
  std::string label = "[";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) label += ',';
    for (auto entry : basis[i])
      label += static_cast<char>(entry < 10 ? '0' + entry : 'a' + entry - 10);
  }
  return label + "]";
}

double gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0.0;
  double value = 1.0;
  for (int i = 0; i < k; ++i) {
    value *= (std::pow(static_cast<double>(q), n - i) - 1.0);
    value /= (std::pow(static_cast<double>(q), i + 1) - 1.0);
  }
  return value;
}

}  // namespace geolat::detail
