#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "siegel/matrix.hpp"
#include "siegel/tolerances.hpp"

namespace siegel {

/// Factors of g = k * diag(a) * u with k in SO_n, a positive with unit product, and u unit
/// upper triangular. b holds the successive ratios a_i / a_{i+1}.
struct IwasawaFactors {
  SquareMatrix k;
  std::vector<double> a;
  SquareMatrix u;
  std::vector<double> b;

  int size() const noexcept { return k.size(); }
};

/// Region parameters of a Siegel set: ratio bound t and unipotent bound lambda.
struct SiegelParams {
  double t = 0.0;
  double lambda = 0.0;

  /// t = 2/sqrt(3), lambda = 1/2: the smallest parameters whose translates cover G.
  static SiegelParams minimal();
  /// Throws Error(InvalidArgument) unless t > 0 and lambda > 0.
  void validate() const;
};

enum class Membership { inside, outside, boundary };

std::string_view to_string(Membership m);

/// Gram-Schmidt on the columns of g. Throws NonInvertible when a pivot or the pivot-ratio
/// condition estimate is out of range and NotUnimodular when det(g) is not +1 within det_tol.
IwasawaFactors decompose(const SquareMatrix& g, const Tolerances& tol = kDefaultTolerances);

SquareMatrix recompose(const IwasawaFactors& f);

/// The orthonormal factor q of x = q r with r upper triangular and positive diagonal; no
/// determinant requirement on x.
SquareMatrix orthonormalize_columns(const SquareMatrix& x,
                                    const Tolerances& tol = kDefaultTolerances);

/// Unit upper triangular matrix from its strictly-upper coefficients listed row by row:
/// (0,1), (0,2), ..., (0,n-1), (1,2), ...
SquareMatrix unit_upper(int n, std::span<const double> coeffs);
/// Inverse of unit_upper: the strictly-upper entries of u, row by row.
std::vector<double> strict_upper(const SquareMatrix& u);

std::vector<double> ratios_from_diagonal(std::span<const double> a);
/// Inverts ratios_from_diagonal under the constraint prod(a) = 1.
std::vector<double> diagonal_from_ratios(std::span<const double> b);

/// How far the (b, u) coordinates are from satisfying the Siegel constraints, in the same
/// units as the constraints: max over i of (b_i - t) and over i<j of (|u_ij| - lambda).
/// Non-positive means inside or on the boundary.
double siegel_excess(std::span<const double> b, const SquareMatrix& u, const SiegelParams& p);

Membership classify_excess(double excess, double tol);

Membership siegel_membership(const IwasawaFactors& f, const SiegelParams& p, double tol);
Membership siegel_membership(const SquareMatrix& g, const SiegelParams& p, double tol,
                             const Tolerances& tols = kDefaultTolerances);

// Row (N-left) convention, h = nu * diag(beta) * kappa, used by the intersection machinery.

struct RowFactors {
  SquareMatrix nu;
  std::vector<double> beta;
  SquareMatrix kappa;

  int size() const noexcept { return nu.size(); }
};

/// Gram-Schmidt on the rows of h, bottom row first.
RowFactors decompose_rows(const SquareMatrix& h, const Tolerances& tol = kDefaultTolerances);
SquareMatrix recompose(const RowFactors& f);

/// Transpose across the anti-diagonal, X -> J X^T J. An anti-automorphism of SL_n that
/// preserves SL_n(Z), SO_n, the positive diagonal group (reversed) and N (entries permuted).
SquareMatrix antitranspose(const SquareMatrix& x);
IntMatrix antitranspose(const IntMatrix& x);

/// Membership in the left-action Siegel set antitranspose(Sigma_{t,lambda}): |nu_ij| <= lambda
/// and beta_{i+1}/beta_i <= t.
Membership row_siegel_membership(const RowFactors& f, const SiegelParams& p, double tol);

}  // namespace siegel
