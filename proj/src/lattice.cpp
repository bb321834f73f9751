#include "geolat/lattice.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace geolat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeBound: return "size-bound";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotPrime: return "not-prime";
    case ErrorKind::NotAtom: return "not-atom";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::NoBottom: return "no-bottom";
    case ErrorKind::NoTop: return "no-top";
    case ErrorKind::NotPoset: return "not-poset";
    case ErrorKind::NotLattice: return "not-lattice";
    case ErrorKind::NotGraded: return "not-graded";
    case ErrorKind::NotComparable: return "not-comparable";
    case ErrorKind::NonzeroDiagonal: return "nonzero-diagonal";
    case ErrorKind::InsufficientLength: return "insufficient-length";
    case ErrorKind::NoConvergence: return "no-convergence";
  }
  return "unknown";
}

namespace {

class DenseTables final : public JoinMeetRule {
 public:
  DenseTables(std::size_t n, const JoinMeetRule& source) : n_(n), join_(n * n), meet_(n * n) {
    for (ElementId x = 0; x < n; ++x) {
      for (ElementId y = x; y < n; ++y) {
        const ElementId j = source.join(x, y);
        const ElementId m = source.meet(x, y);
        join_[x * n + y] = join_[y * n + x] = j;
        meet_[x * n + y] = meet_[y * n + x] = m;
      }
    }
  }

  ElementId join(ElementId x, ElementId y) const override { return join_[x * n_ + y]; }
  ElementId meet(ElementId x, ElementId y) const override { return meet_[x * n_ + y]; }

 private:
  std::size_t n_;
  std::vector<ElementId> join_;
  std::vector<ElementId> meet_;
};

}  // namespace

FiniteLattice FiniteLattice::assemble(Parts parts, std::shared_ptr<const JoinMeetRule> rule,
                                      std::size_t table_limit) {
  FiniteLattice lattice;
  const std::size_t n = parts.rank.size();
  if (n == 0) throw LatticeError(ErrorKind::NoBottom, "lattice has no elements");

  lattice.rank_ = std::move(parts.rank);
  lattice.family_tag_ = std::move(parts.family_tag);
  lattice.labels_ = std::move(parts.labels);
  if (lattice.labels_.size() != n) {
    lattice.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) lattice.labels_[i] = std::to_string(i);
  }

  if (n <= table_limit) {
    lattice.rule_ = std::make_shared<DenseTables>(n, *rule);
    lattice.has_tables_ = true;
  } else {
    lattice.rule_ = std::move(rule);
  }

  lattice.is_atom_flag_.assign(n, false);
  for (ElementId x = 0; x < n; ++x) {
    if (lattice.rank_[x] == 1) {
      lattice.atoms_.push_back(x);
      lattice.is_atom_flag_[x] = true;
    }
  }

  const auto top_it = std::max_element(lattice.rank_.begin(), lattice.rank_.end());
  lattice.top_rank_ = *top_it;
  lattice.top_ = static_cast<ElementId>(top_it - lattice.rank_.begin());

  if (!parts.covers_up.empty()) {
    lattice.covers_up_ = std::move(parts.covers_up);
    for (auto& ups : lattice.covers_up_) std::sort(ups.begin(), ups.end());
  } else {
    // In an atomic semimodular lattice the upper covers of x are exactly
    // the joins x v p with p an atom not below x.
    lattice.covers_up_.resize(n);
    for (ElementId x = 0; x < n; ++x) {
      auto& ups = lattice.covers_up_[x];
      for (ElementId p : lattice.atoms_)
        if (lattice.meet(p, x) == 0) ups.push_back(lattice.join(p, x));
      std::sort(ups.begin(), ups.end());
      ups.erase(std::unique(ups.begin(), ups.end()), ups.end());
    }
  }
  return lattice;
}

std::vector<ElementId> FiniteLattice::layer(int k) const {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < size(); ++x)
    if (rank_[x] == k) out.push_back(x);
  return out;
}

std::size_t FiniteLattice::cover_count() const {
  std::size_t total = 0;
  for (const auto& ups : covers_up_) total += ups.size();
  return total;
}

int count_atoms_below(const FiniteLattice& lattice, ElementId x) {
  int count = 0;
  for (ElementId p : lattice.atoms())
    if (lattice.meet(p, x) == p) ++count;
  return count;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& check : checks)
    if (check.name == name) return &check;
  return nullptr;
}

namespace {

/// Visits pairs exhaustively or by deterministic sampling; stops at the first
/// pair where `ok` is false.
template <class Ok>
ValidationCheck pair_check(const std::string& name, std::size_t n, const ValidationOptions& options, Ok ok) {
  ValidationCheck check{name};
  if (n <= options.exhaustive_pairs) {
    for (ElementId x = 0; x < n; ++x)
      for (ElementId y = x; y < n; ++y)
        if (!ok(x, y)) {
          check.passed = false;
          check.counterexample = std::make_pair(x, y);
          return check;
        }
    return check;
  }
  check.exhaustive = false;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
  for (std::size_t s = 0; s < options.samples; ++s) {
    const ElementId x = pick(rng), y = pick(rng);
    if (!ok(x, y)) {
      check.passed = false;
      check.counterexample = std::make_pair(x, y);
      return check;
    }
  }
  return check;
}

}  // namespace

ValidationReport validate(const FiniteLattice& L, const ValidationOptions& options) {
  ValidationReport report;
  const std::size_t n = L.size();
  auto& checks = report.checks;

  {
    ValidationCheck bottom{"unique-bottom"};
    ValidationCheck top{"unique-top"};
    ElementId rank0 = 0, rank_top = 0;
    for (ElementId x = 0; x < n; ++x) {
      if (L.rank(x) == 0) ++rank0;
      if (L.rank(x) == L.top_rank()) ++rank_top;
    }
    bottom.passed = rank0 == 1 && L.rank(0) == 0;
    top.passed = rank_top == 1;
    for (ElementId x = 0; x < n && bottom.passed && top.passed; ++x) {
      if (L.meet(0, x) != 0 || L.join(0, x) != x) {
        bottom.passed = false;
        bottom.counterexample = std::make_pair(ElementId{0}, x);
      }
      if (L.join(L.top(), x) != L.top()) {
        top.passed = false;
        top.counterexample = std::make_pair(L.top(), x);
      }
    }
    checks.push_back(bottom);
    checks.push_back(top);
  }

  checks.push_back(pair_check("commutative", n, options, [&](ElementId x, ElementId y) {
    return L.join(x, y) == L.join(y, x) && L.meet(x, y) == L.meet(y, x);
  }));
  checks.push_back(pair_check("idempotent-absorptive", n, options, [&](ElementId x, ElementId y) {
    return L.join(x, x) == x && L.meet(x, x) == x && L.join(x, L.meet(x, y)) == x &&
           L.meet(x, L.join(x, y)) == x && L.join(y, L.meet(y, x)) == y && L.meet(y, L.join(y, x)) == y;
  }));

  {
    ValidationCheck assoc{"associative"};
    auto triple_ok = [&](ElementId x, ElementId y, ElementId z) {
      return L.join(L.join(x, y), z) == L.join(x, L.join(y, z)) &&
             L.meet(L.meet(x, y), z) == L.meet(x, L.meet(y, z));
    };
    if (n <= options.exhaustive_triples) {
      for (ElementId x = 0; x < n && assoc.passed; ++x)
        for (ElementId y = 0; y < n && assoc.passed; ++y)
          for (ElementId z = 0; z < n && assoc.passed; ++z)
            if (!triple_ok(x, y, z)) {
              assoc.passed = false;
              assoc.counterexample = std::make_pair(x, y);
              assoc.note = "third element " + std::to_string(z);
            }
    } else {
      assoc.exhaustive = false;
      std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
      std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(n - 1));
      for (std::size_t s = 0; s < options.samples && assoc.passed; ++s) {
        const ElementId x = pick(rng), y = pick(rng), z = pick(rng);
        if (!triple_ok(x, y, z)) {
          assoc.passed = false;
          assoc.counterexample = std::make_pair(x, y);
          assoc.note = "third element " + std::to_string(z);
        }
      }
    }
    checks.push_back(assoc);
  }

  {
    // Every listed cover must be a strict relation one rank up, and the
    // transitive closure of the covers must reproduce the order x <= y iff
    // x v y = y.
    ValidationCheck graded{"graded"};
    ValidationCheck order{"order-consistent"};
    for (ElementId x = 0; x < n && graded.passed; ++x)
      for (ElementId y : L.covers_up(x)) {
        if (L.rank(y) != L.rank(x) + 1) {
          graded.passed = false;
          graded.counterexample = std::make_pair(x, y);
          break;
        }
        if (L.join(x, y) != y || x == y) {
          order.passed = false;
          order.counterexample = std::make_pair(x, y);
        }
      }
    if (order.passed && graded.passed && n <= options.exhaustive_pairs) {
      const std::size_t words = (n + 63) / 64;
      std::vector<std::uint64_t> up(n * words, 0);
      // Highest rank first so every cover's up-set is complete when read.
      std::vector<ElementId> by_rank(n);
      for (ElementId x = 0; x < n; ++x) by_rank[x] = x;
      std::stable_sort(by_rank.begin(), by_rank.end(),
                       [&](ElementId a, ElementId b) { return L.rank(a) > L.rank(b); });
      for (ElementId x : by_rank) {
        std::uint64_t* row = &up[x * words];
        row[x / 64] |= std::uint64_t{1} << (x % 64);
        for (ElementId y : L.covers_up(x)) {
          const std::uint64_t* other = &up[y * words];
          for (std::size_t w = 0; w < words; ++w) row[w] |= other[w];
        }
      }
      for (ElementId x = 0; x < n && order.passed; ++x)
        for (ElementId y = 0; y < n; ++y) {
          const bool reach = (up[x * words + y / 64] >> (y % 64)) & 1U;
          if (reach != (L.join(x, y) == y)) {
            order.passed = false;
            order.counterexample = std::make_pair(x, y);
            break;
          }
        }
    } else if (order.passed) {
      order.exhaustive = false;
    }
    if (!graded.passed) order.note = "skipped closure: covers not graded";
    checks.push_back(graded);
    checks.push_back(order);
  }

  {
    ValidationCheck atomic{"atomic"};
    for (ElementId x = 0; x < n; ++x) {
      ElementId acc = 0;
      for (ElementId p : L.atoms())
        if (L.meet(p, x) == p) acc = L.join(acc, p);
      if (acc != x) {
        atomic.passed = false;
        atomic.counterexample = std::make_pair(x, acc);
        break;
      }
    }
    checks.push_back(atomic);
  }

  checks.push_back(pair_check("semimodular", n, options, [&](ElementId x, ElementId y) {
    return L.rank(x) + L.rank(y) >= L.rank(L.join(x, y)) + L.rank(L.meet(x, y));
  }));

  {
    // Matroid flat axiom: for a flat F, the flats covering F partition the
    // atoms outside F. Here flats are the atom sets below each element.
    ValidationCheck flats{"matroid-flat-partition"};
    for (ElementId x = 0; x < n && flats.passed; ++x) {
      for (ElementId p : L.atoms()) {
        if (L.meet(p, x) == p) continue;
        int containing = 0;
        for (ElementId y : L.covers_up(x))
          if (L.meet(p, y) == p) ++containing;
        if (containing != 1) {
          flats.passed = false;
          flats.counterexample = std::make_pair(x, p);
          break;
        }
      }
    }
    checks.push_back(flats);
  }

  report.is_semimodular_atomic = report.find("atomic")->passed && report.find("semimodular")->passed;
  report.is_geometric = report.all_passed();
  if (L.family_tag().rfind("affine", 0) == 0)
    report.note = report.is_geometric
                      ? "affine flats with the adjoined bottom satisfy the matroid flat axioms "
                        "(flat lattice of the affine matroid)"
                      : "affine flat lattice failed a geometric check";
  return report;
}

}  // namespace geolat
