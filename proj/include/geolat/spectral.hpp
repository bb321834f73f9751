#pragma once

#include <vector>

#include "geolat/lattice.hpp"
#include "geolat/operator.hpp"
#include "geolat/polynomial.hpp"
#include "geolat/radial.hpp"

namespace geolat {

/// m_0 .. m_K as exact rationals.
using MomentSequence = std::vector<Rational>;

/// D_{-1}, D_0, ..., D_r where D_k(t) = det(I - t J_k) and J_k is the
/// leading (k+1) x (k+1) block. Element i of the result is D_{i-1}.
std::vector<RationalPolynomial> determinant_polynomials(const JacobiData& jacobi);

/// Vacuum resolvent G(t) = <e_0, (I - tJ)^-1 e_0> = sum_k m_k t^k as
/// D'_{r-1}(t) / D_r(t), where D'_{r-1} is the determinant of I - tJ with
/// level 0 removed. Unreduced; the constant 1 when r = 0.
RationalFunction resolvent(const JacobiData& jacobi);

/// D_{r-1}(t) / D_r(t), which is <e_r, (I - tJ)^-1 e_r> at the top level.
/// Coincides with resolvent() when beta is palindromic, as for Boolean
/// lattices, and differs otherwise (M3 gives (1 - 3/4 t^2)/(1 - 15/4 t^2)
/// here against (1 - 3 t^2)/(1 - 15/4 t^2) at the bottom).
RationalFunction top_resolvent(const JacobiData& jacobi);

/// <e_bottom, H^k e_bottom> for k = 0..K by repeated sparse application.
MomentSequence vacuum_moments_full(const FiniteLattice& lattice, const OperatorMatrix& hamiltonian, int max_k);

/// <e_0, J^k e_0> for k = 0..K as weighted Dyck-path sums in the beta_k^2.
MomentSequence vacuum_moments_radial(const JacobiData& jacobi, int max_k);

struct SpectralAtom {
  double eigenvalue;
  double weight;
};

/// Finitely supported probability measure, atoms sorted by eigenvalue.
struct SpectralMeasure {
  std::vector<SpectralAtom> atoms;

  double total_weight() const;
  double moment(int k) const;
};

/// Eigenvalues of the zero-diagonal tridiagonal matrix with off-diagonal
/// `off_diagonal`, weighted by the squared first eigenvector components.
/// Throws NoConvergence if the QL sweep stalls.
SpectralMeasure eigendecompose_tridiagonal(const std::vector<double>& off_diagonal);
SpectralMeasure eigendecompose(const JacobiData& jacobi);

/// Atoms n/2 - j with weights 2^-n C(n, j).
SpectralMeasure boolean_closed_form(int n);

enum class Family { Boolean, Projective, Affine };

struct FamilySpec {
  Family family;
  /// n for Boolean; r for the projective and affine families.
  int r = 0;
  int q = 2;
};

struct ClosedFormBeta {
  Rational beta_sq;
  double beta;
};

/// [m]_q = (q^m - 1) / (q - 1).
mpz_class q_integer(int m, int q);

/// Closed-form radial coefficient beta_k of a family. For the affine family
/// k indexes the lower rank of the shifted lattice, so k = 0 couples the
/// bottom to the q^r points. Throws InvalidArgument when k is out of range.
ClosedFormBeta closed_form_beta(const FamilySpec& family, int k);

}  // namespace geolat
