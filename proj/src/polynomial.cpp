#include "geolat/polynomial.hpp"

#include <stdexcept>

namespace geolat {

Rational parse_rational(const std::string& text) {
  Rational value;
  if (text.empty() || value.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
  if (value.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  value.canonicalize();
  return value;
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> coefficients(static_cast<std::size_t>(degree) + 1);
  coefficients.back() = c;
  return RationalPolynomial(std::move(coefficients));
}

void RationalPolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
}

Rational RationalPolynomial::coefficient(int k) const {
  return k >= 0 && k < static_cast<int>(coefficients_.size()) ? coefficients_[k] : Rational(0);
}

Rational RationalPolynomial::operator()(const Rational& t) const {
  Rational value;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * t + *it;
  return value;
}

double RationalPolynomial::evaluate(double t) const {
  double value = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) value = value * t + it->get_d();
  return value;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] += other.coefficients_[i];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) coefficients_.resize(other.coefficients_.size());
  for (std::size_t i = 0; i < other.coefficients_.size(); ++i) coefficients_[i] -= other.coefficients_[i];
  trim();
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> product(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i)
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) product[i + j] += a.coefficients_[i] * b.coefficients_[j];
  return RationalPolynomial(std::move(product));
}

RationalPolynomial operator*(const Rational& c, const RationalPolynomial& p) {
  std::vector<Rational> scaled = p.coefficients_;
  for (auto& value : scaled) value *= c;
  return RationalPolynomial(std::move(scaled));
}

std::pair<RationalPolynomial, RationalPolynomial> RationalPolynomial::divmod(const RationalPolynomial& a,
                                                                           const RationalPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RationalPolynomial remainder = a;
  std::vector<Rational> quotient(a.degree() >= b.degree() ? static_cast<std::size_t>(a.degree() - b.degree()) + 1 : 0);
  while (!remainder.is_zero() && remainder.degree() >= b.degree()) {
    const int shift = remainder.degree() - b.degree();
    const Rational factor = remainder.leading() / b.leading();
    quotient[shift] = factor;
    remainder -= monomial(factor, shift) * b;
  }
  return {RationalPolynomial(std::move(quotient)), std::move(remainder)};
}

RationalPolynomial RationalPolynomial::gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    auto remainder = divmod(a, b).second;
    a = std::move(b);
    b = std::move(remainder);
  }
  if (a.is_zero()) return a;
  return Rational(1) / a.leading() * a;
}

std::vector<std::string> RationalPolynomial::coefficient_strings() const {
  std::vector<std::string> out;
  for (const auto& c : coefficients_) out.push_back(geolat::to_string(c));
  if (out.empty()) out.push_back("0");
  return out;
}

std::string RationalPolynomial::to_string(const std::string& variable) const {
  if (is_zero()) return "0";
  std::string text;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const Rational& c = coefficients_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (text.empty()) {
      if (negative) text += "-";
    } else {
      text += negative ? " - " : " + ";
    }
    if (k == 0 || magnitude != 1) text += geolat::to_string(magnitude);
    if (k >= 1) text += (k == 0 || magnitude != 1 ? "*" : "") + variable;
    if (k >= 2) text += "^" + std::to_string(k);
  }
  return text;
}

RationalFunction::RationalFunction(RationalPolynomial numerator, RationalPolynomial denominator) {
  const Rational at_zero = denominator.coefficient(0);
  if (at_zero == 0) throw std::domain_error("denominator vanishes at t = 0");
  const Rational scale = Rational(1) / at_zero;
  numerator_ = scale * numerator;
  denominator_ = scale * denominator;
}

RationalFunction RationalFunction::reduced() const {
  const auto common = RationalPolynomial::gcd(numerator_, denominator_);
  if (common.is_zero() || common.degree() == 0) {
    RationalFunction copy = *this;
    copy.reduced_ = true;
    return copy;
  }
  RationalFunction result(RationalPolynomial::divmod(numerator_, common).first,
                          RationalPolynomial::divmod(denominator_, common).first);
  result.reduced_ = true;
  return result;
}

std::vector<Rational> RationalFunction::series(int order) const {
  // denominator(0) = 1, so c_k = p_k - sum_{i>=1} q_i c_{k-i}.
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Rational value = numerator_.coefficient(k);
    for (int i = 1; i <= k && i <= denominator_.degree(); ++i) value -= denominator_.coefficient(i) * c[k - i];
    c[k] = value;
  }
  return c;
}

bool RationalFunction::equivalent(const RationalFunction& other) const {
  return numerator_ * other.denominator_ == other.numerator_ * denominator_;
}

}  // namespace geolat
