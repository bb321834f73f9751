#include "geolat/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geolat {

std::vector<RationalPolynomial> determinant_polynomials(const JacobiData& J) {
  std::vector<RationalPolynomial> d;
  d.reserve(static_cast<std::size_t>(J.r) + 2);
  d.push_back(RationalPolynomial::constant(1));  // D_{-1}
  d.push_back(RationalPolynomial::constant(1));  // D_0
  for (int k = 0; k < J.r; ++k) {
    // D_{k+1} = D_k - beta_k^2 t^2 D_{k-1}
    d.push_back(d[k + 1] - RationalPolynomial::monomial(J.beta_sq[k], 2) * d[k]);
  }
  return d;
}

RationalFunction resolvent(const JacobiData& J) {
  if (J.r == 0) return {RationalPolynomial::constant(1), RationalPolynomial::constant(1)};
  // Cramer: the (0,0) cofactor of I - tJ is the determinant of the block on
  // levels 1..r, which the same recurrence produces from beta_1..beta_{r-1}.
  const auto lower = jacobi_from_beta_sq(std::vector<Rational>(J.beta_sq.begin() + 1, J.beta_sq.end()));
  return {determinant_polynomials(lower).back(), determinant_polynomials(J).back()};
}

RationalFunction top_resolvent(const JacobiData& J) {
  if (J.r == 0) return {RationalPolynomial::constant(1), RationalPolynomial::constant(1)};
  auto d = determinant_polynomials(J);
  return {d[J.r], d[J.r + 1]};
}

MomentSequence vacuum_moments_full(const FiniteLattice& L, const OperatorMatrix& H, int max_k) {
  if (H.dim() != L.size()) throw LatticeError(ErrorKind::DimensionMismatch, "operator does not match lattice");
  if (max_k < 0) throw LatticeError(ErrorKind::InvalidArgument, "moment order must be non-negative");
  MomentSequence moments;
  RationalVector v = basis_vector(L.size(), L.bottom());
  moments.push_back(v[L.bottom()]);
  for (int k = 1; k <= max_k; ++k) {
    v = geolat::apply(H, v);
    moments.push_back(v[L.bottom()]);
  }
  return moments;
}

MomentSequence vacuum_moments_radial(const JacobiData& J, int max_k) {
  if (max_k < 0) throw LatticeError(ErrorKind::InvalidArgument, "moment order must be non-negative");
  // paths[h] = total weight of paths of the current length from level 0 to
  // level h, each up step j -> j+1 carrying beta_j^2 and down steps weight 1.
  // A closed path then weighs the product of beta^2 over its up steps.
  const auto levels = static_cast<std::size_t>(J.r) + 1;
  std::vector<Rational> paths(levels);
  paths[0] = 1;
  MomentSequence moments{paths[0]};
  for (int step = 1; step <= max_k; ++step) {
    std::vector<Rational> next(levels);
    for (std::size_t h = 0; h < levels; ++h) {
      if (paths[h] == 0) continue;
      if (h + 1 < levels) next[h + 1] += paths[h] * J.beta_sq[h];
      if (h > 0) next[h - 1] += paths[h];
    }
    paths = std::move(next);
    moments.push_back(paths[0]);
  }
  return moments;
}

double SpectralMeasure::total_weight() const {
  double total = 0.0;
  for (const auto& atom : atoms) total += atom.weight;
  return total;
}

double SpectralMeasure::moment(int k) const {
  double total = 0.0;
  for (const auto& atom : atoms) total += std::pow(atom.eigenvalue, k) * atom.weight;
  return total;
}

SpectralMeasure eigendecompose_tridiagonal(const std::vector<double>& off_diagonal) {
  const std::size_t n = off_diagonal.size() + 1;
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
  // First row of the accumulated eigenvector matrix.
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  constexpr double kDeflation = 1e-14;
  constexpr int kMaxIterations = 60;
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kDeflation * dd || e[m] == 0.0) break;
      }
      if (m == l) break;
      if (++iterations > kMaxIterations)
        throw LatticeError(ErrorKind::NoConvergence, "tridiagonal QL iteration did not converge");

      // Implicit Wilkinson-shifted QL sweep from m down to l.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  // Rounding leaves ~1e-16 residue where the exact eigenvalue is 0; snap it
  // so that printed spectra are stable.
  double scale = 0.0;
  for (double b : off_diagonal) scale = std::max(scale, std::abs(b));
  SpectralMeasure measure;
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = std::abs(d[i]) <= 64 * std::numeric_limits<double>::epsilon() * scale ? 0.0 : d[i];
    measure.atoms.push_back({lambda, z[i] * z[i]});
  }
  std::sort(measure.atoms.begin(), measure.atoms.end(),
            [](const SpectralAtom& a, const SpectralAtom& b) { return a.eigenvalue < b.eigenvalue; });
  return measure;
}

SpectralMeasure eigendecompose(const JacobiData& J) { return eigendecompose_tridiagonal(J.beta); }

SpectralMeasure boolean_closed_form(int n) {
  if (n < 0) throw LatticeError(ErrorKind::InvalidArgument, "boolean rank must be non-negative");
  SpectralMeasure measure;
  double binomial = 1.0;
  const double scale = std::ldexp(1.0, -n);
  for (int j = 0; j <= n; ++j) {
    measure.atoms.push_back({n / 2.0 - j, binomial * scale});
    binomial = binomial * (n - j) / (j + 1);
  }
  std::reverse(measure.atoms.begin(), measure.atoms.end());
  return measure;
}

mpz_class q_integer(int m, int q) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(m));
  return (power - 1) / (q - 1);
}

namespace {

mpz_class power_of(int base, int exponent) {
  mpz_class value;
  mpz_ui_pow_ui(value.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return value;
}

}  // namespace

ClosedFormBeta closed_form_beta(const FamilySpec& spec, int k) {
  const int r = spec.r;
  const int q = spec.q;
  Rational b2;
  switch (spec.family) {
    case Family::Boolean:
      // beta_k = (1/2) sqrt((k+1)(n-k))
      if (k < 0 || k >= r) throw LatticeError(ErrorKind::InvalidArgument, "k out of range for boolean family");
      b2 = Rational((k + 1) * (r - k), 4);
      break;
    case Family::Projective:
      // beta_k = (q^k / 2) sqrt([k+1]_q [r-k]_q)
      if (k < 0 || k >= r) throw LatticeError(ErrorKind::InvalidArgument, "k out of range for projective family");
      b2 = Rational(power_of(q, 2 * k) * q_integer(k + 1, q) * q_integer(r - k, q), 4);
      break;
    case Family::Affine:
      if (k < 0 || k > r) throw LatticeError(ErrorKind::InvalidArgument, "k out of range for affine family");
      if (k == 0) {
        // bottom to the q^r points, each cover weight 1
        b2 = Rational(power_of(q, r), 4);
      } else {
        // beta_k = ((q-1) q^(k-1) / 2) sqrt(q [k]_q [r-k+1]_q)
        b2 = Rational(mpz_class((q - 1) * (q - 1)) * power_of(q, 2 * k - 1) * q_integer(k, q) * q_integer(r - k + 1, q), 4);
      }
      break;
  }
  b2.canonicalize();
  return {b2, std::sqrt(b2.get_d())};
}

}  // namespace geolat
