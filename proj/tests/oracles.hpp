#pragma once

// Test-only reference computations. Nothing here calls into the radial,
// spectral or product code paths that the tests check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "geolat/custom.hpp"
#include "geolat/lattice.hpp"
#include "geolat/operator.hpp"
#include "geolat/rational.hpp"

namespace oracle {

using geolat::ElementId;
using geolat::Rational;
using DenseMatrix = std::vector<std::vector<Rational>>;

inline DenseMatrix dense(const geolat::OperatorMatrix& m) {
  DenseMatrix out(m.dim(), std::vector<Rational>(m.dim()));
  for (ElementId col = 0; col < m.dim(); ++col)
    for (const auto& [row, value] : m.column(col)) out[row][col] = value;
  return out;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t n = a.size();
  DenseMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline DenseMatrix identity(std::size_t n) {
  DenseMatrix out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

inline DenseMatrix power(const DenseMatrix& a, int k) {
  DenseMatrix out = identity(a.size());
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

/// H straight from the definition of the diamond product on a dense grid:
/// H[y][x] += 1/2 for every atom a with a ^ x = 0 and a v x = y, and the
/// transpose contribution.
inline DenseMatrix dense_hamiltonian(const geolat::FiniteLattice& L) {
  const std::size_t n = L.size();
  DenseMatrix h(n, std::vector<Rational>(n));
  for (ElementId a = 0; a < n; ++a) {
    if (L.rank(a) != 1) continue;
    for (ElementId x = 0; x < n; ++x) {
      if (L.meet(a, x) != 0) continue;
      const ElementId y = L.join(a, x);
      h[y][x] += Rational(1, 2);
      h[x][y] += Rational(1, 2);
    }
  }
  return h;
}

/// Closed walks of length k on levels 0..r starting at 0, each up step from
/// level j weighted by beta_sq[j], enumerated step by step.
inline Rational dyck_moment(const std::vector<Rational>& beta_sq, int k) {
  const int r = static_cast<int>(beta_sq.size());
  Rational total = 0;
  std::function<void(int, int, Rational)> walk = [&](int step, int level, Rational weight) {
    if (step == k) {
      if (level == 0) total += weight;
      return;
    }
    if (level < r) walk(step + 1, level + 1, weight * beta_sq[level]);
    if (level > 0) walk(step + 1, level - 1, weight);
  };
  walk(0, 0, Rational(1));
  return total;
}

/// det(I - tJ_k) for the zero-diagonal tridiagonal J_k as a polynomial in t:
/// only products of disjoint adjacent transpositions survive, each edge i
/// contributing -beta_i^2 t^2. Enumerates every edge subset.
inline std::vector<Rational> matching_determinant(const std::vector<Rational>& beta_sq, int k) {
  const int edges = k;  // edges 0..k-1 in a (k+1)-vertex path
  std::vector<Rational> coefficients(static_cast<std::size_t>(2 * (edges / 2 + 1) + 1));
  for (std::uint32_t mask = 0; mask < (1U << edges); ++mask) {
    if (mask & (mask >> 1)) continue;
    Rational term = 1;
    for (int e = 0; e < edges; ++e)
      if ((mask >> e) & 1U) term *= -beta_sq[e];
    coefficients[2 * std::popcount(mask)] += term;
  }
  while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
  return coefficients;
}

/// Subspaces of F_q^r as sets of vectors (bitmask over the q^r vectors,
/// indexed in base q), grown from {0} by adding one vector and closing
/// under addition and scaling. Returns counts per dimension.
inline std::vector<std::size_t> count_subspaces(int r, int q) {
  int points = 1;
  for (int i = 0; i < r; ++i) points *= q;
  auto digits = [&](int v) {
    std::vector<int> d(r);
    for (int i = 0; i < r; ++i, v /= q) d[i] = v % q;
    return d;
  };
  auto index = [&](const std::vector<int>& d) {
    int v = 0;
    for (int i = r - 1; i >= 0; --i) v = v * q + d[i];
    return v;
  };
  auto close = [&](std::uint64_t set) {
    bool grown = true;
    while (grown) {
      grown = false;
      for (int a = 0; a < points; ++a) {
        if (!((set >> a) & 1U)) continue;
        for (int b = 0; b < points; ++b) {
          if (!((set >> b) & 1U)) continue;
          for (int s = 0; s < q; ++s) {
            auto da = digits(a), db = digits(b);
            for (int i = 0; i < r; ++i) da[i] = (da[i] + s * db[i]) % q;
            const int c = index(da);
            if (!((set >> c) & 1U)) {
              set |= std::uint64_t{1} << c;
              grown = true;
            }
          }
        }
      }
    }
    return set;
  };
  std::set<std::uint64_t> seen{1};
  std::vector<std::uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto set : frontier)
      for (int v = 1; v < points; ++v) {
        if ((set >> v) & 1U) continue;
        const auto bigger = close(set | (std::uint64_t{1} << v));
        if (seen.insert(bigger).second) next.push_back(bigger);
      }
    frontier = std::move(next);
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(r) + 1, 0);
  for (auto set : seen) {
    int size = std::popcount(set), dim = 0;
    while (size > 1) size /= q, ++dim;
    ++counts[dim];
  }
  return counts;
}

/// Lattice of flats of the vector matroid on `vectors` (columns over F_q,
/// each packed in base q), as a custom document: flats by closure, covers
/// by brute-force comparison of flat sets.
inline geolat::CustomLatticeData vector_matroid_flats(const std::vector<std::vector<int>>& vectors, int q) {
  const int m = static_cast<int>(vectors.size());
  const int dim = static_cast<int>(vectors.front().size());
  // rank of a subset by Gaussian elimination mod q
  auto rank_of = [&](std::uint32_t subset) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < m; ++i)
      if ((subset >> i) & 1U) rows.push_back(vectors[i]);
    int rank = 0;
    for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
      int pivot = -1;
      for (int i = rank; i < static_cast<int>(rows.size()); ++i)
        if (rows[i][col] % q) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      std::swap(rows[rank], rows[pivot]);
      int inv = 1;
      while ((rows[rank][col] * inv) % q != 1) ++inv;
      for (auto& v : rows[rank]) v = (v * inv) % q;
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (i == rank || rows[i][col] == 0) continue;
        const int f = rows[i][col];
        for (int j = 0; j < dim; ++j) rows[i][j] = ((rows[i][j] - f * rows[rank][j]) % q + q) % q;
      }
      ++rank;
    }
    return rank;
  };
  auto closure = [&](std::uint32_t subset) {
    const int r = rank_of(subset);
    for (int i = 0; i < m; ++i)
      if (!((subset >> i) & 1U) && rank_of(subset | (1U << i)) == r) subset |= 1U << i;
    return subset;
  };
  std::map<std::uint32_t, int> flat_rank;
  std::vector<std::uint32_t> frontier{closure(0)};
  flat_rank[frontier.front()] = rank_of(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (auto f : frontier)
      for (int i = 0; i < m; ++i) {
        if ((f >> i) & 1U) continue;
        const auto g = closure(f | (1U << i));
        if (flat_rank.emplace(g, rank_of(g)).second) next.push_back(g);
      }
    frontier = std::move(next);
  }
  std::vector<std::uint32_t> flats;
  for (auto& [f, r] : flat_rank) flats.push_back(f);
  std::stable_sort(flats.begin(), flats.end(),
                   [&](auto a, auto b) { return flat_rank[a] < flat_rank[b]; });

  geolat::CustomLatticeData data;
  for (auto f : flats) {
    std::string label = "{";
    for (int i = 0; i < m; ++i)
      if ((f >> i) & 1U) label += std::to_string(i) + ";";
    data.labels.push_back(label + "}");
  }
  for (ElementId a = 0; a < flats.size(); ++a)
    for (ElementId b = 0; b < flats.size(); ++b) {
      const bool below = (flats[a] & flats[b]) == flats[a] && flats[a] != flats[b];
      if (below && flat_rank[flats[b]] == flat_rank[flats[a]] + 1) data.relations.emplace_back(a, b);
    }
  return data;
}

/// Random vector configurations over F_q; returns the flat lattice.
inline geolat::CustomLatticeData random_geometric(std::mt19937& rng, int q, int dim, int count) {
  std::uniform_int_distribution<int> entry(0, q - 1);
  std::vector<std::vector<int>> vectors;
  while (static_cast<int>(vectors.size()) < count) {
    std::vector<int> v(dim);
    for (auto& e : v) e = entry(rng);
    if (std::any_of(v.begin(), v.end(), [](int e) { return e != 0; })) vectors.push_back(v);
  }
  return vector_matroid_flats(vectors, q);
}

}  // namespace oracle
