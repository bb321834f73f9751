#include "geolat/custom.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <json.hpp>

namespace geolat {

namespace {

using Bits = std::vector<std::uint64_t>;

class BitsetOrder {
 public:
  explicit BitsetOrder(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(ElementId x, ElementId y) { bits_[x * words_ + y / 64] |= std::uint64_t{1} << (y % 64); }
  bool test(ElementId x, ElementId y) const { return (bits_[x * words_ + y / 64] >> (y % 64)) & 1U; }
  void merge(ElementId into, ElementId from) {
    for (std::size_t w = 0; w < words_; ++w) bits_[into * words_ + w] |= bits_[from * words_ + w];
  }
  const std::uint64_t* row(ElementId x) const { return &bits_[x * words_]; }
  std::size_t words() const { return words_; }

 private:
  std::size_t n_;
  std::size_t words_;
  Bits bits_;
};

/// Join = least common upper bound found from up-set bitsets.
class CustomRule final : public JoinMeetRule {
 public:
  CustomRule(BitsetOrder up, BitsetOrder down, std::vector<int> rank)
      : up_(std::move(up)), down_(std::move(down)), rank_(std::move(rank)) {}

  ElementId join(ElementId x, ElementId y) const override { return extreme(up_, x, y, true); }
  ElementId meet(ElementId x, ElementId y) const override { return extreme(down_, x, y, false); }

  /// Returns n when the bound is not unique.
  ElementId extreme(const BitsetOrder& rel, ElementId x, ElementId y, bool lowest) const {
    const std::uint64_t* a = rel.row(x);
    const std::uint64_t* b = rel.row(y);
    ElementId best = static_cast<ElementId>(rank_.size());
    for (std::size_t w = 0; w < rel.words(); ++w) {
      std::uint64_t common = a[w] & b[w];
      while (common) {
        const auto z = static_cast<ElementId>(w * 64 + std::countr_zero(common));
        common &= common - 1;
        if (best == rank_.size() || (lowest ? rank_[z] < rank_[best] : rank_[z] > rank_[best])) best = z;
      }
    }
    if (best == rank_.size()) return best;
    // The candidate must lie below (above) every common bound.
    const std::uint64_t* candidate = rel.row(best);
    for (std::size_t w = 0; w < rel.words(); ++w)
      if ((a[w] & b[w]) & ~candidate[w]) return static_cast<ElementId>(rank_.size());
    return best;
  }

 private:
  BitsetOrder up_;
  BitsetOrder down_;
  std::vector<int> rank_;
};

std::string pair_text(const CustomLatticeData& data, ElementId x, ElementId y) {
  return "(" + data.labels[x] + ", " + data.labels[y] + ")";
}

}  // namespace

CustomLatticeData parse_custom_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LatticeError(ErrorKind::ParseError, std::string("malformed lattice document: ") + e.what());
  }
  CustomLatticeData data;
  try {
    if (!doc.is_object() || !doc.contains("elements"))
      throw LatticeError(ErrorKind::ParseError, "lattice document needs an \"elements\" array");
    const auto& elements = doc.at("elements");
    const std::size_t n = elements.size();
    if (n > kCustomLatticeLimit)
      throw LatticeError(ErrorKind::SizeBound, "custom lattice has " + std::to_string(n) + " elements, limit is " +
                                                   std::to_string(kCustomLatticeLimit));
    data.labels.assign(n, "");
    std::vector<bool> seen(n, false);
    for (const auto& element : elements) {
      const auto id = element.at("id").get<long long>();
      if (id < 0 || static_cast<std::size_t>(id) >= n || seen[id])
        throw LatticeError(ErrorKind::ParseError, "element ids must be dense from 0 without repeats");
      seen[id] = true;
      data.labels[id] = element.contains("label") ? element.at("label").get<std::string>() : std::to_string(id);
    }
    const char* key = doc.contains("covers") ? "covers" : (doc.contains("order") ? "order" : nullptr);
    data.is_order = key && std::string(key) == "order";
    if (key) {
      for (const auto& pair : doc.at(key)) {
        if (!pair.is_array() || pair.size() != 2)
          throw LatticeError(ErrorKind::ParseError, "relations must be [lo, hi] pairs");
        const auto lo = pair[0].get<long long>(), hi = pair[1].get<long long>();
        if (lo < 0 || hi < 0 || static_cast<std::size_t>(lo) >= n || static_cast<std::size_t>(hi) >= n)
          throw LatticeError(ErrorKind::ParseError, "relation references an unknown element");
        data.relations.emplace_back(static_cast<ElementId>(lo), static_cast<ElementId>(hi));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw LatticeError(ErrorKind::ParseError, std::string("bad lattice document: ") + e.what());
  }
  return data;
}

FiniteLattice lattice_from_covers(const CustomLatticeData& data, const BuildOptions& options) {
  const std::size_t n = data.labels.size();
  if (n == 0) throw LatticeError(ErrorKind::NoBottom, "empty element list has no bottom");
  if (n > kCustomLatticeLimit || n > options.size_cap)
    throw LatticeError(ErrorKind::SizeBound, "custom lattice too large");

  std::vector<std::vector<ElementId>> ups(n);
  std::vector<int> indegree(n, 0);
  for (auto [lo, hi] : data.relations) {
    if (lo == hi) {
      if (data.is_order) continue;
      throw LatticeError(ErrorKind::NotPoset, "element " + data.labels[lo] + " covers itself");
    }
    ups[lo].push_back(hi);
  }
  for (auto& u : ups) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (ElementId y : u) ++indegree[y];
  }

  // Kahn's algorithm; leftovers sit on a cycle.
  std::vector<ElementId> topo;
  {
    std::vector<int> deg = indegree;
    std::deque<ElementId> ready;
    for (ElementId x = 0; x < n; ++x)
      if (deg[x] == 0) ready.push_back(x);
    while (!ready.empty()) {
      const ElementId x = ready.front();
      ready.pop_front();
      topo.push_back(x);
      for (ElementId y : ups[x])
        if (--deg[y] == 0) ready.push_back(y);
    }
    if (topo.size() != n) throw LatticeError(ErrorKind::NotPoset, "relations contain a cycle");
  }

  BitsetOrder up(n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    up.set(*it, *it);
    for (ElementId y : ups[*it]) up.merge(*it, y);
  }

  // Keep only the Hasse diagram: drop x -> y when another successor reaches y.
  for (ElementId x = 0; x < n; ++x) {
    std::vector<ElementId> reduced;
    for (ElementId y : ups[x]) {
      const bool implied = std::any_of(ups[x].begin(), ups[x].end(),
                                       [&](ElementId z) { return z != y && up.test(z, y); });
      if (!implied) {
        reduced.push_back(y);
      } else if (!data.is_order) {
        throw LatticeError(ErrorKind::NotPoset, "listed cover " + pair_text(data, x, y) + " is implied by a longer chain");
      }
    }
    ups[x] = std::move(reduced);
  }

  std::vector<ElementId> minimal, maximal;
  std::vector<bool> has_lower(n, false);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y : ups[x]) has_lower[y] = true;
  for (ElementId x = 0; x < n; ++x) {
    if (!has_lower[x]) minimal.push_back(x);
    if (ups[x].empty()) maximal.push_back(x);
  }
  if (minimal.size() != 1) throw LatticeError(ErrorKind::NoBottom, "poset has " + std::to_string(minimal.size()) + " minimal elements");
  if (minimal.front() != 0) throw LatticeError(ErrorKind::NoBottom, "element 0 must be the bottom");
  if (maximal.size() != 1) throw LatticeError(ErrorKind::NoTop, "poset has " + std::to_string(maximal.size()) + " maximal elements");

  std::vector<int> rank(n, -1);
  rank[0] = 0;
  for (ElementId x : topo) {
    for (ElementId y : ups[x]) {
      if (rank[y] < 0) {
        rank[y] = rank[x] + 1;
      } else if (rank[y] != rank[x] + 1) {
        throw LatticeError(ErrorKind::NotGraded, "maximal chains to " + data.labels[y] + " have different lengths");
      }
    }
  }

  BitsetOrder down(n);
  for (ElementId x : topo) {
    down.set(x, x);
    for (ElementId y : ups[x]) down.merge(y, x);
  }

  auto rule = std::make_shared<CustomRule>(up, down, rank);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = x + 1; y < n; ++y) {
      if (rule->join(x, y) == n)
        throw LatticeError(ErrorKind::NotLattice, "no unique join for " + pair_text(data, x, y));
      if (rule->meet(x, y) == n)
        throw LatticeError(ErrorKind::NotLattice, "no unique meet for " + pair_text(data, x, y));
    }

  FiniteLattice::Parts parts;
  parts.rank = std::move(rank);
  parts.covers_up = std::move(ups);
  parts.labels = data.labels;
  parts.family_tag = "custom";
  return FiniteLattice::assemble(std::move(parts), std::move(rule), options.table_limit);
}

ParsedLattice parse_lattice(const std::string& text, const BuildOptions& options) {
  auto lattice = lattice_from_covers(parse_custom_document(text), options);
  auto report = validate(lattice);
  return {std::move(lattice), std::move(report)};
}

std::string serialize_lattice(const FiniteLattice& lattice) {
  nlohmann::ordered_json doc;
  doc["family"] = lattice.family_tag();
  auto elements = nlohmann::ordered_json::array();
  auto covers = nlohmann::ordered_json::array();
  for (ElementId x = 0; x < lattice.size(); ++x) {
    elements.push_back({{"id", x}, {"label", lattice.label(x)}});
    for (ElementId y : lattice.covers_up(x)) covers.push_back({x, y});
  }
  doc["elements"] = std::move(elements);
  doc["covers"] = std::move(covers);
  return doc.dump(1) + "\n";
}

}  // namespace geolat
