#include <doctest.h>

#include <cmath>

#include "geolat/product.hpp"
#include "oracles.hpp"

using namespace geolat;

namespace {

bool same_measure(const SpectralMeasure& a, const SpectralMeasure& b, double tol) {
  if (a.atoms.size() != b.atoms.size()) return false;
  for (std::size_t i = 0; i < a.atoms.size(); ++i)
    if (std::abs(a.atoms[i].eigenvalue - b.atoms[i].eigenvalue) > tol ||
        std::abs(a.atoms[i].weight - b.atoms[i].weight) > tol)
      return false;
  return true;
}

/// Binomial moment convolution written out from the dense product H.
MomentSequence dense_product_moments(const FiniteLattice& product, int max_k) {
  const auto h = oracle::dense_hamiltonian(product);
  MomentSequence out;
  auto p = oracle::identity(h.size());
  for (int k = 0; k <= max_k; ++k) {
    out.push_back(p[0][0]);
    p = oracle::multiply(p, h);
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("product");

TEST_CASE("tensor identification") {
  const auto left = build_uniform(2, 3), right = build_boolean(2);
  const auto P = build_product(left, right);
  const auto id = tensor_identification(P, left, right);
  REQUIRE(id.forward.size() == P.size());
  for (ElementId x = 0; x < P.size(); ++x) {
    const auto [a, b] = id.forward[x];
    CHECK(id.to_product(a, b, right.size()) == x);
    CHECK(P.rank(x) == left.rank(a) + right.rank(b));
  }
  CHECK_THROWS_AS(tensor_identification(build_boolean(3), left, right), LatticeError);
}

TEST_CASE("kronecker sum") {
  SUBCASE("B1 x B1 is the B2 hamiltonian") {
    const auto b1 = build_boolean(1);
    CHECK(kronecker_sum_check(b1, b1).equal);
    const auto P = build_product(b1, b1);
    const auto id = tensor_identification(P, b1, b1);
    const auto sum = kronecker_sum(hamiltonian(b1), hamiltonian(b1), id);
    // identify (x, y) with the subset whose first element is present iff x is the top
    const auto b2 = build_boolean(2);
    CHECK(oracle::dense(sum) == oracle::dense(hamiltonian(b2)));
  }
  SUBCASE("pairs") {
    const auto m3 = build_uniform(2, 3);
    CHECK(kronecker_sum_check(m3, build_boolean(1)).equal);
    CHECK(kronecker_sum_check(build_boolean(2), build_boolean(2)).equal);
    CHECK(kronecker_sum_check(build_projective(2, 3), m3).equal);
    for (const auto& L : {m3, build_affine(2, 2), build_boolean(3)}) {
      CHECK(kronecker_sum_check(build_boolean(0), L).equal);
      CHECK(kronecker_sum_check(L, build_boolean(0)).equal);
    }
  }
}

TEST_CASE("shuffle formula") {
  const auto b1 = build_boolean(1);
  const auto m3 = build_uniform(2, 3);
  SUBCASE("B1 x B1 corner") {
    const auto entry = shuffle_entry(b1, b1, {0, 0}, {1, 1});
    CHECK(entry.d() == 2);
    CHECK(entry.formula == Rational(1, 2));
    CHECK(entry.direct == Rational(1, 2));
  }
  SUBCASE("diagonal") {
    const auto entry = shuffle_entry(m3, b1, {2, 1}, {2, 1});
    CHECK(entry.d() == 0);
    CHECK(entry.formula == 1);
    CHECK(entry.direct == 1);
  }
  SUBCASE("M3 x B1 corner") {
    const auto entry = shuffle_entry(m3, b1, {0, 0}, {m3.top(), 1});
    CHECK(entry.d1 == 2);
    CHECK(entry.d2 == 1);
    const auto m3_dense = oracle::power(oracle::dense_hamiltonian(m3), 2);
    CHECK(m3_dense[0][m3.top()] == Rational(3, 2));
    CHECK(entry.formula == 3 * m3_dense[0][m3.top()] * Rational(1, 2));
    CHECK(entry.direct == entry.formula);
  }
  SUBCASE("incomparable pairs are rejected") {
    try {
      shuffle_entry(m3, b1, {1, 0}, {2, 1});
      FAIL("accepted incomparable pair");
    } catch (const LatticeError& e) {
      CHECK(e.kind() == ErrorKind::NotComparable);
    }
  }
  SUBCASE("every comparable pair with d <= 4") {
    for (const auto& [l, r] : {std::pair{b1, b1}, std::pair{build_boolean(2), b1}, std::pair{m3, b1}}) {
      const ProductContext ctx(l, r);
      int checked = 0;
      for (ElementId x1 = 0; x1 < l.size(); ++x1)
        for (ElementId y1 = 0; y1 < l.size(); ++y1)
          for (ElementId x2 = 0; x2 < r.size(); ++x2)
            for (ElementId y2 = 0; y2 < r.size(); ++y2) {
              if (!l.leq(x1, y1) || !r.leq(x2, y2)) continue;
              const auto entry = shuffle_entry(ctx, {x1, x2}, {y1, y2});
              if (entry.d() > 4) continue;
              CHECK(entry.formula == entry.direct);
              ++checked;
            }
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("moment convolution") {
  auto moments_of = [](const FiniteLattice& L, int k) { return vacuum_moments_full(L, hamiltonian(L), k); };
  SUBCASE("B1 * B1") {
    const auto b1 = moments_of(build_boolean(1), 4);
    const auto conv = convolve_moments(b1, b1, 4);
    CHECK(conv[2] == Rational(1, 2));
    CHECK(conv == dense_product_moments(build_boolean(2), 4));
  }
  SUBCASE("pairs to order 8") {
    for (const auto& [l, r] : {std::pair{build_boolean(1), build_boolean(1)},
                               std::pair{build_uniform(2, 3), build_boolean(1)},
                               std::pair{build_boolean(2), build_boolean(2)}}) {
      const auto P = build_product(l, r);
      const auto conv = convolve_moments(moments_of(l, 8), moments_of(r, 8), 8);
      CHECK(conv == moments_of(P, 8));
      CHECK(conv == dense_product_moments(P, 8));
      CHECK(conv == convolve_moments(moments_of(r, 8), moments_of(l, 8), 8));
    }
  }
  SUBCASE("unit") {
    const auto m = moments_of(build_projective(3, 2), 6);
    const MomentSequence delta{1, 0, 0, 0, 0, 0, 0};
    CHECK(convolve_moments(m, delta, 6) == m);
  }
  SUBCASE("too short") {
    try {
      convolve_moments({1, 0}, {1, 0, 1}, 2);
      FAIL("accepted short input");
    } catch (const LatticeError& e) {
      CHECK(e.kind() == ErrorKind::InsufficientLength);
    }
  }
}

TEST_CASE("measure convolution") {
  const auto b1 = eigendecompose(jacobi_from_formula(build_boolean(1)));
  SUBCASE("B1 * B1") { CHECK(same_measure(convolve_measures(b1, b1), boolean_closed_form(2), 1e-12)); }
  SUBCASE("delta is the unit") {
    const auto mu = eigendecompose(jacobi_from_formula(build_uniform(2, 3)));
    CHECK(same_measure(convolve_measures(mu, SpectralMeasure{{{0.0, 1.0}}}), mu, 1e-15));
  }
  SUBCASE("n-fold self convolution") {
    SpectralMeasure mu{{{0.0, 1.0}}};
    for (int n = 1; n <= 8; ++n) {
      mu = convolve_measures(mu, b1);
      CHECK(same_measure(mu, boolean_closed_form(n), 1e-9));
    }
  }
  SUBCASE("moments match the moment convolution") {
    const auto l = build_uniform(2, 3), r = build_projective(2, 3);
    const auto jl = jacobi_from_formula(l), jr = jacobi_from_formula(r);
    const auto mu = convolve_measures(eigendecompose(jl), eigendecompose(jr));
    const auto m = convolve_moments(vacuum_moments_radial(jl, 8), vacuum_moments_radial(jr, 8), 8);
    for (int k = 0; k <= 8; ++k) CHECK(std::abs(mu.moment(k) - m[k].get_d()) <= 1e-8 * std::max(1.0, m[k].get_d()));
  }
}

TEST_SUITE_END();
