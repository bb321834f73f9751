#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geolat/rational.hpp"

namespace geolat {

/// Dense univariate polynomial with exact coefficients in ascending degree.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coefficients);

  static RationalPolynomial constant(const Rational& c) { return RationalPolynomial({c}); }
  static RationalPolynomial monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  Rational coefficient(int k) const;
  const Rational& leading() const { return coefficients_.back(); }

  Rational operator()(const Rational& t) const;
  double evaluate(double t) const;

  RationalPolynomial& operator+=(const RationalPolynomial& other);
  RationalPolynomial& operator-=(const RationalPolynomial& other);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const Rational& c, const RationalPolynomial& p);
  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

  /// Quotient and remainder; throws std::domain_error on a zero divisor.
  static std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                                  const RationalPolynomial& b);
  /// Monic gcd (zero when both inputs are zero).
  static RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

  std::vector<std::string> coefficient_strings() const;
  std::string to_string(const std::string& variable = "t") const;

 private:
  void trim();

  std::vector<Rational> coefficients_;
};

/// numerator / denominator with the denominator normalized to 1 at t = 0.
class RationalFunction {
 public:
  /// Throws std::domain_error when the denominator vanishes at 0.
  RationalFunction(RationalPolynomial numerator, RationalPolynomial denominator);

  const RationalPolynomial& numerator() const { return numerator_; }
  const RationalPolynomial& denominator() const { return denominator_; }
  bool is_reduced() const { return reduced_; }

  /// Common factors removed via the polynomial gcd.
  RationalFunction reduced() const;

  /// Taylor coefficients at 0 up to and including t^order.
  std::vector<Rational> series(int order) const;

  /// Same function, possibly different representation.
  bool equivalent(const RationalFunction& other) const;

 private:
  RationalPolynomial numerator_;
  RationalPolynomial denominator_;
  bool reduced_ = false;
};

}  // namespace geolat
