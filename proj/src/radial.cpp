#include "geolat/radial.hpp"

#include <cmath>
#include <numeric>

namespace geolat {

std::size_t RankLayers::total() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

RankLayers rank_layers(const FiniteLattice& L) {
  RankLayers layers;
  layers.r = L.top_rank();
  layers.sizes.assign(static_cast<std::size_t>(L.top_rank()) + 1, 0);
  for (ElementId x = 0; x < L.size(); ++x) ++layers.sizes[L.rank(x)];
  return layers;
}

std::vector<std::int64_t> cover_weight_sums(const FiniteLattice& L) {
  std::vector<std::int64_t> atoms_below(L.size());
  for (ElementId x = 0; x < L.size(); ++x) atoms_below[x] = count_atoms_below(L, x);
  std::vector<std::int64_t> weights(static_cast<std::size_t>(L.top_rank()), 0);
  for (ElementId x = 0; x < L.size(); ++x)
    for (ElementId y : L.covers_up(x)) weights[L.rank(x)] += atoms_below[y] - atoms_below[x];
  return weights;
}

namespace {

void fill_beta(JacobiData& data) {
  data.beta.clear();
  for (const auto& b2 : data.beta_sq) data.beta.push_back(std::sqrt(b2.get_d()));
}

}  // namespace

JacobiData jacobi_from_beta_sq(std::vector<Rational> beta_sq) {
  JacobiData data;
  data.r = static_cast<int>(beta_sq.size());
  data.beta_sq = std::move(beta_sq);
  fill_beta(data);
  return data;
}

JacobiData jacobi_from_formula(const FiniteLattice& L) {
  JacobiData data;
  data.layers = rank_layers(L);
  data.r = data.layers.r;
  data.cover_weights = cover_weight_sums(L);
  for (int k = 0; k < data.r; ++k) {
    const mpz_class w = static_cast<long>(data.cover_weights[k]);
    const mpz_class denom = mpz_class(4) * static_cast<unsigned long>(data.layers.sizes[k]) *
                            static_cast<unsigned long>(data.layers.sizes[k + 1]);
    Rational b2(w * w, denom);
    b2.canonicalize();
    data.beta_sq.push_back(b2);
  }
  fill_beta(data);
  return data;
}

std::vector<std::vector<Rational>> layer_block_sums(const FiniteLattice& L, const OperatorMatrix& H) {
  if (H.dim() != L.size()) throw LatticeError(ErrorKind::DimensionMismatch, "operator does not match lattice");
  const auto levels = static_cast<std::size_t>(L.top_rank()) + 1;
  std::vector<std::vector<Rational>> blocks(levels, std::vector<Rational>(levels));
  for (ElementId col = 0; col < H.dim(); ++col)
    for (const auto& [row, value] : H.column(col)) blocks[L.rank(row)][L.rank(col)] += value;
  return blocks;
}

JacobiData jacobi_from_compression(const FiniteLattice& L, const OperatorMatrix& H) {
  const auto blocks = layer_block_sums(L, H);
  JacobiData data;
  data.layers = rank_layers(L);
  data.r = data.layers.r;
  for (int i = 0; i <= data.r; ++i)
    for (int j = 0; j <= data.r; ++j) {
      if (std::abs(i - j) == 1 || blocks[i][j] == 0) continue;
      throw LatticeError(ErrorKind::NonzeroDiagonal, "compression has a nonzero entry at levels (" +
                                                         std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  for (int k = 0; k < data.r; ++k) {
    const Rational& coupling = blocks[k][k + 1];
    // <s_k, H s_{k+1}> = W_k / 2.
    const Rational w = coupling * 2;
    if (w.get_den() != 1) throw LatticeError(ErrorKind::NonzeroDiagonal, "cover weight sum is not an integer");
    data.cover_weights.push_back(w.get_num().get_si());
    Rational b2 = coupling * coupling /
                  (Rational(static_cast<unsigned long>(data.layers.sizes[k])) *
                   Rational(static_cast<unsigned long>(data.layers.sizes[k + 1])));
    data.beta_sq.push_back(b2);
  }
  fill_beta(data);
  return data;
}

InvarianceReport radial_invariance(const FiniteLattice& L, const OperatorMatrix& H) {
  InvarianceReport report;
  const int r = L.top_rank();
  std::vector<std::vector<ElementId>> layers(static_cast<std::size_t>(r) + 1);
  for (ElementId x = 0; x < L.size(); ++x) layers[L.rank(x)].push_back(x);

  for (int k = 0; k <= r; ++k) {
    RationalVector s(L.size());
    for (ElementId x : layers[k]) s[x] = 1;
    const RationalVector hs = geolat::apply(H, s);
    // H s_k must be constant on every layer (zero on layers other than k +- 1).
    std::vector<ElementId> residual;
    for (int j = 0; j <= r; ++j) {
      const Rational reference = std::abs(j - k) == 1 ? hs[layers[j].front()] : Rational(0);
      for (ElementId x : layers[j])
        if (hs[x] != reference) residual.push_back(x);
    }
    if (!residual.empty()) {
      report.invariant = false;
      report.failing_level = k;
      report.residual_support = std::move(residual);
      return report;
    }
  }
  return report;
}

}  // namespace geolat
