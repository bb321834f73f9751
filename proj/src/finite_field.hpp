#pragma once

// Linear algebra over the prime field F_q, just enough to enumerate and
// combine subspaces in reduced row-echelon form.

#include <cstdint>
#include <string>
#include <vector>

namespace geolat::detail {

using FqRow = std::vector<std::uint8_t>;

class PrimeField {
 public:
  explicit PrimeField(int q);

  int order() const { return q_; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>((a + b) % q_); }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>((a + q_ - b) % q_); }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return static_cast<std::uint8_t>((a * b) % q_); }
  std::uint8_t inv(std::uint8_t a) const { return inverse_[a]; }

  /// Reduced row-echelon basis of the span of `rows`; zero rows dropped.
  std::vector<FqRow> rref(std::vector<FqRow> rows) const;
  /// Basis of {x : <row, x> = 0 for all rows}, in rref.
  std::vector<FqRow> orthogonal(const std::vector<FqRow>& basis, int dim) const;

  std::vector<FqRow> sum(const std::vector<FqRow>& a, const std::vector<FqRow>& b) const;
  std::vector<FqRow> intersect(const std::vector<FqRow>& a, const std::vector<FqRow>& b, int dim) const;

  /// Every k-dimensional subspace of F_q^dim, as rref bases sorted by key.
  std::vector<std::vector<FqRow>> subspaces(int dim, int k) const;

 private:
  int q_;
  std::vector<std::uint8_t> inverse_;
};

bool is_prime(int q);

/// Row entries concatenated; unique per rref basis.
std::string subspace_key(const std::vector<FqRow>& basis);
std::string subspace_label(const std::vector<FqRow>& basis);

/// Gaussian binomial (n choose k)_q as a double, for size estimates.
double gaussian_binomial(int n, int k, int q);

}  // namespace geolat::detail
