#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "finite_field.hpp"
#include "geolat/lattice.hpp"

namespace geolat {

namespace {

void check_size(double count, const BuildOptions& options, const std::string& what) {
  if (count > static_cast<double>(options.size_cap))
    throw LatticeError(ErrorKind::SizeBound, what + " would have " + std::to_string(static_cast<long long>(count)) +
                                                 " elements, above the cap of " +
                                                 std::to_string(options.size_cap));
}

std::string set_label(std::uint64_t mask) {
  std::string label = "{";
  bool first = true;
  for (int i = 0; i < 64; ++i) {
    if (!((mask >> i) & 1U)) continue;
    if (!first) label += ',';
    label += std::to_string(i + 1);
    first = false;
  }
  return label + "}";
}

/// Lattices whose elements are subsets of a ground set, encoded as bitmasks.
class MaskRule final : public JoinMeetRule {
 public:
  MaskRule(std::vector<std::uint64_t> masks, int uniform_rank, std::uint64_t full)
      : masks_(std::move(masks)), uniform_rank_(uniform_rank), full_(full) {
    for (ElementId i = 0; i < masks_.size(); ++i) index_.emplace(masks_[i], i);
  }

  ElementId join(ElementId x, ElementId y) const override {
    std::uint64_t u = masks_[x] | masks_[y];
    if (std::popcount(u) >= uniform_rank_) u = full_;
    return index_.at(u);
  }
  ElementId meet(ElementId x, ElementId y) const override { return index_.at(masks_[x] & masks_[y]); }

 private:
  std::vector<std::uint64_t> masks_;
  std::unordered_map<std::uint64_t, ElementId> index_;
  int uniform_rank_;
  std::uint64_t full_;
};

FiniteLattice assemble_masks(std::vector<std::uint64_t> masks, int uniform_rank, std::uint64_t full,
                             int top_rank, std::string tag, const BuildOptions& options) {
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const int ca = std::popcount(a), cb = std::popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  FiniteLattice::Parts parts;
  parts.family_tag = std::move(tag);
  for (auto mask : masks) {
    parts.rank.push_back(mask == full ? top_rank : std::popcount(mask));
    parts.labels.push_back(set_label(mask));
  }
  auto rule = std::make_shared<MaskRule>(std::move(masks), uniform_rank, full);
  return FiniteLattice::assemble(std::move(parts), std::move(rule), options.table_limit);
}

/// Subspaces of F_q^dim; with `affine` set, only those not inside the
/// hyperplane x0 = 0, plus the zero subspace as the bottom.
class SubspaceRule final : public JoinMeetRule {
 public:
  SubspaceRule(int q, int dim, bool affine, std::vector<std::vector<detail::FqRow>> bases)
      : field_(q), dim_(dim), affine_(affine), bases_(std::move(bases)) {
    for (ElementId i = 0; i < bases_.size(); ++i) index_.emplace(detail::subspace_key(bases_[i]), i);
  }

  ElementId join(ElementId x, ElementId y) const override {
    return index_.at(detail::subspace_key(field_.sum(bases_[x], bases_[y])));
  }
  ElementId meet(ElementId x, ElementId y) const override {
    const auto common = field_.intersect(bases_[x], bases_[y], dim_);
    if (affine_ && (common.empty() || common.front()[0] == 0)) return 0;
    return index_.at(detail::subspace_key(common));
  }

 private:
  detail::PrimeField field_;
  int dim_;
  bool affine_;
  std::vector<std::vector<detail::FqRow>> bases_;
  std::unordered_map<std::string, ElementId> index_;
};

void check_field(int r, int q) {
  if (r < 1) throw LatticeError(ErrorKind::InvalidArgument, "rank must be at least 1");
  if (!detail::is_prime(q) || q > 251) throw LatticeError(ErrorKind::NotPrime, std::to_string(q) + " is not a supported prime");
}

FiniteLattice assemble_subspaces(int q, int dim, bool affine, std::vector<std::vector<detail::FqRow>> bases,
                                 std::string tag, const BuildOptions& options) {
  FiniteLattice::Parts parts;
  parts.family_tag = std::move(tag);
  for (const auto& basis : bases) {
    parts.rank.push_back(static_cast<int>(basis.size()));
    parts.labels.push_back(basis.empty() && affine ? "bottom" : detail::subspace_label(basis));
  }
  auto rule = std::make_shared<SubspaceRule>(q, dim, affine, std::move(bases));
  return FiniteLattice::assemble(std::move(parts), std::move(rule), options.table_limit);
}

class ProductRule final : public JoinMeetRule {
 public:
  ProductRule(FiniteLattice left, FiniteLattice right) : left_(std::move(left)), right_(std::move(right)) {}

  ElementId join(ElementId x, ElementId y) const override {
    return combine(left_.join(first(x), first(y)), right_.join(second(x), second(y)));
  }
  ElementId meet(ElementId x, ElementId y) const override {
    return combine(left_.meet(first(x), first(y)), right_.meet(second(x), second(y)));
  }

 private:
  ElementId first(ElementId x) const { return static_cast<ElementId>(x / right_.size()); }
  ElementId second(ElementId x) const { return static_cast<ElementId>(x % right_.size()); }
  ElementId combine(ElementId a, ElementId b) const { return product_id(right_, a, b); }

  FiniteLattice left_;
  FiniteLattice right_;
};

}  // namespace

FiniteLattice build_boolean(int n, const BuildOptions& options) {
  if (n < 0 || n > 62) throw LatticeError(ErrorKind::InvalidArgument, "boolean rank out of range");
  check_size(std::ldexp(1.0, n), options, "boolean(" + std::to_string(n) + ")");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::uint64_t> masks(count);
  for (std::uint64_t m = 0; m < count; ++m) masks[m] = m;
  return assemble_masks(std::move(masks), n + 1, count - 1, n, "boolean(" + std::to_string(n) + ")", options);
}

FiniteLattice build_uniform(int r, int m, const BuildOptions& options) {
  if (r < 1 || m < r || m > 62) throw LatticeError(ErrorKind::InvalidArgument, "uniform(r, m) needs 1 <= r <= m <= 62");
  double count = 1.0;
  for (int k = 0; k < r; ++k) count += std::round(std::tgamma(m + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m - k + 1.0)));
  const std::string tag = "uniform(" + std::to_string(r) + "," + std::to_string(m) + ")";
  check_size(count, options, tag);

  const std::uint64_t full = (std::uint64_t{1} << m) - 1;
  std::vector<std::uint64_t> masks;
  // Gosper's hack walks all k-subsets in increasing numeric order.
  for (int k = 0; k < r; ++k) {
    if (k == 0) {
      masks.push_back(0);
      continue;
    }
    std::uint64_t s = (std::uint64_t{1} << k) - 1;
    while (s <= full) {
      masks.push_back(s);
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t next = s + c;
      s = (((next ^ s) >> 2) / c) | next;
    }
  }
  masks.push_back(full);
  return assemble_masks(std::move(masks), r, full, r, tag, options);
}

FiniteLattice build_projective(int r, int q, const BuildOptions& options) {
  check_field(r, q);
  const std::string tag = "projective(" + std::to_string(r) + "," + std::to_string(q) + ")";
  double count = 0.0;
  for (int k = 0; k <= r; ++k) count += detail::gaussian_binomial(r, k, q);
  check_size(count, options, tag);

  const detail::PrimeField field(q);
  std::vector<std::vector<detail::FqRow>> bases;
  for (int k = 0; k <= r; ++k) {
    auto layer = field.subspaces(r, k);
    bases.insert(bases.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return assemble_subspaces(q, r, false, std::move(bases), tag, options);
}

FiniteLattice build_affine(int r, int q, const BuildOptions& options) {
  check_field(r, q);
  const std::string tag = "affine(" + std::to_string(r) + "," + std::to_string(q) + ")";
  double count = 1.0;
  for (int k = 0; k <= r; ++k) count += std::pow(q, r - k) * detail::gaussian_binomial(r, k, q);
  check_size(count, options, tag);

  // A k-flat p + U is the (k+1)-dimensional subspace span{(1, p), (0, U)}
  // of F_q^(r+1); its rref basis starts with a pivot in column 0.
  const detail::PrimeField field(q);
  std::vector<std::vector<detail::FqRow>> bases{{}};
  for (int k = 1; k <= r + 1; ++k) {
    for (auto& basis : field.subspaces(r + 1, k))
      if (basis.front()[0] == 1) bases.push_back(std::move(basis));
  }
  return assemble_subspaces(q, r + 1, true, std::move(bases), tag, options);
}

FiniteLattice build_product(const FiniteLattice& left, const FiniteLattice& right, const BuildOptions& options) {
  const std::string tag = "product(" + left.family_tag() + "," + right.family_tag() + ")";
  check_size(static_cast<double>(left.size()) * static_cast<double>(right.size()), options, tag);

  FiniteLattice::Parts parts;
  parts.family_tag = tag;
  const std::size_t n = left.size() * right.size();
  parts.rank.reserve(n);
  parts.covers_up.resize(n);
  for (ElementId a = 0; a < left.size(); ++a) {
    for (ElementId b = 0; b < right.size(); ++b) {
      const ElementId id = product_id(right, a, b);
      parts.rank.push_back(left.rank(a) + right.rank(b));
      parts.labels.push_back("(" + left.label(a) + "," + right.label(b) + ")");
      auto& ups = parts.covers_up[id];
      for (ElementId a2 : left.covers_up(a)) ups.push_back(product_id(right, a2, b));
      for (ElementId b2 : right.covers_up(b)) ups.push_back(product_id(right, a, b2));
    }
  }
  auto rule = std::make_shared<ProductRule>(left, right);
  return FiniteLattice::assemble(std::move(parts), std::move(rule), options.table_limit);
}

}  // namespace geolat
