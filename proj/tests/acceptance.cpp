// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "geolat/product.hpp"
#include "geolat/radial.hpp"
#include "geolat/spectral.hpp"
#include "oracles.hpp"

using namespace geolat;

namespace {

struct Built {
  std::string name;
  FiniteLattice lattice;
  OperatorMatrix hamiltonian;
  JacobiData jacobi;
};

class Registry {
 public:
  const Built& add(std::string name, FiniteLattice L) {
    auto H = hamiltonian(L);
    auto J = jacobi_from_compression(L, H);
    entries_.push_back({std::move(name), std::move(L), std::move(H), std::move(J)});
    return entries_.back();
  }
  const std::vector<Built>& all() const { return entries_; }

 private:
  std::vector<Built> entries_;
};

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!passed) detail << "; ";
    passed = false;
    detail << what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string describe(const RationalFunction& g) {
  return "(" + g.numerator().to_string() + ")/(" + g.denominator().to_string() + ")";
}

RationalPolynomial poly(std::initializer_list<Rational> c) { return RationalPolynomial(std::vector<Rational>(c)); }

double binomial(int n, int k) {
  double v = 1;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

mpz_class power(int base, int exponent) {
  mpz_class v = 1;
  for (int i = 0; i < exponent; ++i) v *= base;
  return v;
}

/// [m]_q as 1 + q + ... + q^(m-1).
mpz_class q_number(int m, int q) {
  mpz_class v = 0;
  for (int i = 0; i < m; ++i) v += power(q, i);
  return v;
}

const std::vector<std::pair<int, int>> kProjectiveCases{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}};

}  // namespace

int main() {
  Registry registry;
  int failures = 0;
  auto report = [&](int number, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      body(outcome);
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    if (!outcome.passed) ++failures;
    std::printf("[%s] %2d %s (%.2fs)", outcome.passed ? "PASS" : "FAIL", number, title.c_str(), elapsed);
    const auto detail = outcome.detail.str();
    if (!detail.empty()) std::printf(": %s", detail.c_str());
    std::printf("\n");
    std::fflush(stdout);
  };

  report(1, "M3 radial coefficients and resolvent", [&](Outcome& out) {
    const auto& m3 = registry.add("uniform(2,3)", build_uniform(2, 3));
    const std::vector<Rational> expected{Rational(3, 4), 3};
    if (m3.jacobi.beta_sq != expected) out.fail("compression beta^2 differs");
    if (jacobi_from_formula(m3.lattice).beta_sq != expected) out.fail("formula beta^2 differs");
    const auto g = resolvent(m3.jacobi);
    const auto want_num = poly({1, 0, Rational(-3, 4)});
    const auto want_den = poly({1, 0, Rational(-15, 4)});
    if (g.numerator() != want_num || g.denominator() != want_den) {
      out.fail("G = " + describe(g) + ", expected (" + want_num.to_string() + ")/(" + want_den.to_string() +
               "), which is D_1/D_2 = " + describe(top_resolvent(m3.jacobi)) +
               " and expands to 1 + 3t^2 + ..., while the vacuum moments give 1 + 3/4 t^2 + 45/16 t^4");
    }
  });

  report(2, "Boolean coefficient law n = 1..10 (< 10 s)", [&](Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 10; ++n) {
      const auto& b = registry.add("boolean(" + std::to_string(n) + ")", build_boolean(n));
      for (int k = 0; k < n; ++k)
        if (b.jacobi.beta_sq[k] != Rational((k + 1) * (n - k)) / 4)
          out.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " beta^2=" + to_string(b.jacobi.beta_sq[k]));
    }
    if (seconds_since(start) >= 10) out.fail("too slow");
  });

  report(3, "Boolean determinant polynomials B1..B3", [&](Outcome& out) {
    const std::vector<RationalPolynomial> expected{poly({1, 0, Rational(-1, 4)}), poly({1, 0, -1}),
                                                   poly({1, 0, Rational(-5, 2), 0, Rational(9, 16)})};
    for (int n = 1; n <= 3; ++n) {
      const auto d = determinant_polynomials(jacobi_from_compression(build_boolean(n), hamiltonian(build_boolean(n))));
      if (d.back() != expected[n - 1]) out.fail("B" + std::to_string(n) + ": " + d.back().to_string());
    }
  });

  report(4, "projective coefficient law (< 30 s)", [&](Outcome& out) {
    const auto start = std::chrono::steady_clock::now();
    auto cases = kProjectiveCases;
    cases.emplace_back(4, 3);  // the geometry with 40 + 130 + 40 proper flats
    for (auto [r, q] : cases) {
      const auto& p = registry.add("projective(" + std::to_string(r) + "," + std::to_string(q) + ")",
                                   build_projective(r, q));
      for (int k = 0; k < r; ++k) {
        const Rational expected =
            Rational(power(q, 2 * k) * q_number(k + 1, q) * q_number(r - k, q)) / 4;
        if (p.jacobi.beta_sq[k] != expected) out.fail(p.name + " k=" + std::to_string(k));
      }
      if (r == 4 && q == 3 && rank_layers(p.lattice).sizes != std::vector<std::size_t>{1, 40, 130, 40, 1})
        out.fail("projective(4,3) layers");
    }
    if (seconds_since(start) >= 30) out.fail("too slow");
  });

  report(5, "cover formula equals compression on every built lattice", [&](Outcome& out) {
    registry.add("affine(2,2)", build_affine(2, 2));
    registry.add("affine(2,3)", build_affine(2, 3));
    registry.add("affine(3,2)", build_affine(3, 2));
    for (int m = 2; m <= 6; ++m) registry.add("uniform(2," + std::to_string(m) + ")", build_uniform(2, m));
    std::mt19937 rng(20240607);
    int added = 0;
    for (int attempt = 0; added < 20 && attempt < 200; ++attempt) {
      const int q = attempt % 2 == 0 ? 2 : 3;
      const int dim = 2 + attempt % 3;
      const int count = dim + 1 + static_cast<int>(rng() % 4);
      auto L = lattice_from_covers(oracle::random_geometric(rng, q, dim, count));
      if (!validate(L).is_geometric) {
        out.fail("random lattice failed validation");
        continue;
      }
      registry.add("random#" + std::to_string(added++), std::move(L));
    }
    if (added < 20) out.fail("only " + std::to_string(added) + " random lattices");
    registry.add("product(uniform(2,3),boolean(1))", build_product(build_uniform(2, 3), build_boolean(1)));
    for (const auto& b : registry.all())
      if (!jacobi_from_formula(b.lattice).same_coefficients(b.jacobi)) out.fail(b.name);
    out.detail << registry.all().size() << " lattices";
  });

  report(6, "odd moments vanish and the diagonal is zero (k <= 11)", [&](Outcome& out) {
    for (const auto& b : registry.all()) {
      const auto m = vacuum_moments_full(b.lattice, b.hamiltonian, 11);
      for (int k = 1; k <= 11; k += 2)
        if (m[k] != 0) out.fail(b.name + " m_" + std::to_string(k));
      for (ElementId x = 0; x < b.lattice.size(); ++x)
        if (b.hamiltonian.entry(x, x) != 0) out.fail(b.name + " H diagonal");
      const auto blocks = layer_block_sums(b.lattice, b.hamiltonian);
      for (int k = 0; k <= b.lattice.top_rank(); ++k)
        if (blocks[k][k] != 0) out.fail(b.name + " J diagonal");
    }
  });

  report(7, "radial invariance and full/radial moments to K = 10", [&](Outcome& out) {
    for (const auto& b : registry.all()) {
      const bool expected = b.name.rfind("boolean", 0) == 0 || b.name.rfind("projective", 0) == 0 ||
                            b.name == "uniform(2,3)";
      if (!expected) continue;
      if (!radial_invariance(b.lattice, b.hamiltonian).invariant) out.fail(b.name + " not invariant");
      if (vacuum_moments_full(b.lattice, b.hamiltonian, 10) != vacuum_moments_radial(b.jacobi, 10))
        out.fail(b.name + " moments differ");
    }
  });

  report(8, "resolvent series equals radial moments to order 2r", [&](Outcome& out) {
    for (const auto& b : registry.all()) {
      const int order = 2 * b.jacobi.r;
      if (resolvent(b.jacobi).series(order) != vacuum_moments_radial(b.jacobi, order)) out.fail(b.name);
    }
  });

  report(9, "Boolean spectrum n <= 12 within 1e-10", [&](Outcome& out) {
    for (int n = 0; n <= 12; ++n) {
      const auto L = build_boolean(n);
      const auto mu = eigendecompose(jacobi_from_compression(L, hamiltonian(L)));
      const auto closed = boolean_closed_form(n);
      if (mu.atoms.size() != static_cast<std::size_t>(n + 1) || closed.atoms.size() != mu.atoms.size()) {
        out.fail("n=" + std::to_string(n) + " atom count");
        continue;
      }
      for (int j = 0; j <= n; ++j) {
        const double lambda = j - n / 2.0;
        const double weight = binomial(n, j) / std::pow(2.0, n);
        if (std::abs(mu.atoms[j].eigenvalue - lambda) > 1e-10 || std::abs(mu.atoms[j].weight - weight) > 1e-10)
          out.fail("n=" + std::to_string(n) + " j=" + std::to_string(j));
        if (std::abs(closed.atoms[j].eigenvalue - lambda) > 1e-10 || std::abs(closed.atoms[j].weight - weight) > 1e-10)
          out.fail("closed form n=" + std::to_string(n));
      }
    }
  });

  report(10, "product laws", [&](Outcome& out) {
    const std::vector<std::pair<FiniteLattice, FiniteLattice>> pairs{
        {build_boolean(1), build_boolean(1)}, {build_uniform(2, 3), build_boolean(1)}, {build_boolean(2), build_boolean(2)}};
    for (const auto& [l, r] : pairs) {
      const std::string name = l.family_tag() + " x " + r.family_tag();
      const auto kron = kronecker_sum_check(l, r);
      if (!kron.equal) out.fail(name + " Kronecker: " + kron.detail);
      const ProductContext ctx(l, r);
      for (ElementId x1 = 0; x1 < l.size(); ++x1)
        for (ElementId y1 = 0; y1 < l.size(); ++y1)
          for (ElementId x2 = 0; x2 < r.size(); ++x2)
            for (ElementId y2 = 0; y2 < r.size(); ++y2) {
              if (!l.leq(x1, y1) || !r.leq(x2, y2)) continue;
              if (l.rank(y1) - l.rank(x1) + r.rank(y2) - r.rank(x2) > 4) continue;
              const auto e = shuffle_entry(ctx, {x1, x2}, {y1, y2});
              if (e.formula != e.direct) out.fail(name + " shuffle");
            }
      const auto m = convolve_moments(vacuum_moments_full(l, ctx.left_hamiltonian(), 8),
                                      vacuum_moments_full(r, ctx.right_hamiltonian(), 8), 8);
      if (m != vacuum_moments_full(ctx.product(), ctx.product_hamiltonian(), 8)) out.fail(name + " moments");
    }
    const auto b1 = build_boolean(1);
    const auto mu1 = eigendecompose(jacobi_from_compression(b1, hamiltonian(b1)));
    SpectralMeasure mu{{{0.0, 1.0}}};
    for (int n = 1; n <= 8; ++n) {
      mu = convolve_measures(mu, mu1);
      const auto closed = boolean_closed_form(n);
      bool same = mu.atoms.size() == closed.atoms.size();
      for (std::size_t i = 0; same && i < mu.atoms.size(); ++i)
        same = std::abs(mu.atoms[i].eigenvalue - closed.atoms[i].eigenvalue) <= 1e-9 &&
               std::abs(mu.atoms[i].weight - closed.atoms[i].weight) <= 1e-9;
      if (!same) out.fail("convolution power " + std::to_string(n));
    }
  });

  report(11, "nonassociativity witnesses", [&](Outcome& out) {
    for (const auto& [name, L] : {std::pair{std::string("M3"), build_uniform(2, 3)},
                                  std::pair{std::string("PG(2,2)"), build_projective(3, 2)}}) {
      if (const auto w = nonassociativity_witness(L); !w)
        out.fail("no witness on " + name +
                 " (modular: every triple with x<>y and (x<>y)<>z nonzero is independent in any order)");
    }
    for (int n = 0; n <= 5; ++n)
      if (nonassociativity_witness(build_boolean(n))) out.fail("witness on boolean(" + std::to_string(n) + ")");
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
