#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geolat/error.hpp"

namespace geolat {

/// Dense element index; 0 is always the bottom.
using ElementId = std::uint32_t;

struct BuildOptions {
  std::size_t size_cap = 200000;
  /// Lattices up to this many elements get dense join/meet tables.
  std::size_t table_limit = 2048;
};

/// Join/meet backend. Either dense tables or a family-specific rule.
class JoinMeetRule {
 public:
  virtual ~JoinMeetRule() = default;
  virtual ElementId join(ElementId x, ElementId y) const = 0;
  virtual ElementId meet(ElementId x, ElementId y) const = 0;
};

/// Immutable finite graded lattice. Share freely between readers.
class FiniteLattice {
 public:
  struct Parts {
    std::vector<int> rank;
    std::vector<std::vector<ElementId>> covers_up;
    std::vector<std::string> labels;
    std::string family_tag;
  };

  /// Takes ownership of the combinatorial data and the join/meet rule.
  /// Materializes tables when the element count is within `table_limit`.
  /// Covers are derived from the rule when `parts.covers_up` is empty.
  static FiniteLattice assemble(Parts parts, std::shared_ptr<const JoinMeetRule> rule,
                                std::size_t table_limit);

  std::size_t size() const { return rank_.size(); }
  int rank(ElementId x) const { return rank_[x]; }
  int top_rank() const { return top_rank_; }
  ElementId bottom() const { return 0; }
  ElementId top() const { return top_; }

  ElementId join(ElementId x, ElementId y) const { return rule_->join(x, y); }
  ElementId meet(ElementId x, ElementId y) const { return rule_->meet(x, y); }
  bool leq(ElementId x, ElementId y) const { return meet(x, y) == x; }

  std::span<const ElementId> covers_up(ElementId x) const { return covers_up_[x]; }
  std::span<const ElementId> atoms() const { return atoms_; }
  bool is_atom(ElementId x) const { return is_atom_flag_[x]; }

  const std::string& family_tag() const { return family_tag_; }
  const std::string& label(ElementId x) const { return labels_[x]; }
  bool has_tables() const { return has_tables_; }

  /// Elements of rank k in id order.
  std::vector<ElementId> layer(int k) const;

  std::size_t cover_count() const;

 private:
  FiniteLattice() = default;

  std::vector<int> rank_;
  int top_rank_ = 0;
  ElementId top_ = 0;
  std::vector<std::vector<ElementId>> covers_up_;
  std::vector<ElementId> atoms_;
  std::vector<bool> is_atom_flag_;
  std::vector<std::string> labels_;
  std::string family_tag_;
  std::shared_ptr<const JoinMeetRule> rule_;
  bool has_tables_ = false;
};

// Builders. All throw LatticeError(SizeBound) before enumerating anything
// larger than `options.size_cap`.

FiniteLattice build_boolean(int n, const BuildOptions& options = {});
/// Flats of the uniform matroid U_{r,m}; build_uniform(2, 3) is M3.
FiniteLattice build_uniform(int r, int m, const BuildOptions& options = {});
/// Subspaces of F_q^r, q prime.
FiniteLattice build_projective(int r, int q, const BuildOptions& options = {});
/// Affine flats of F_q^r with an adjoined bottom; a k-flat has rank k + 1.
FiniteLattice build_affine(int r, int q, const BuildOptions& options = {});
/// Componentwise order on L1 x L2, ids lexicographic in (id1, id2).
FiniteLattice build_product(const FiniteLattice& left, const FiniteLattice& right,
                            const BuildOptions& options = {});

/// Id of (x1, x2) in build_product(left, right).
inline ElementId product_id(const FiniteLattice& right, ElementId x1, ElementId x2) {
  return static_cast<ElementId>(x1 * right.size() + x2);
}

/// Number of atoms p with p <= x.
int count_atoms_below(const FiniteLattice& lattice, ElementId x);

struct ValidationCheck {
  explicit ValidationCheck(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::optional<std::pair<ElementId, ElementId>> counterexample;
  /// False when the check sampled instead of enumerating.
  bool exhaustive = true;
  std::string note;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool is_geometric = false;
  bool is_semimodular_atomic = false;
  std::string note;

  bool all_passed() const;
  const ValidationCheck* find(const std::string& name) const;
};

struct ValidationOptions {
  /// Pair checks enumerate all pairs up to this size, then sample.
  std::size_t exhaustive_pairs = 2048;
  /// Triple checks (associativity) enumerate all triples up to this size.
  std::size_t exhaustive_triples = 64;
  std::size_t samples = 200000;
};

ValidationReport validate(const FiniteLattice& lattice, const ValidationOptions& options = {});

}  // namespace geolat
