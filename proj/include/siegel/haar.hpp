#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "siegel/iwasawa.hpp"
#include "siegel/rng.hpp"

namespace siegel {

/// A point of Sigma_{t,lambda} in Siegel coordinates together with its importance weight.
struct SiegelCoordinatePoint {
  std::vector<double> b;
  SquareMatrix u;
  SquareMatrix k;
  double weight = 0.0;

  /// The group element k * diag(a(b)) * u.
  SquareMatrix to_matrix() const;
};

/// prod_{i<j} a_i / a_j: the determinant of u -> a u a^{-1} on strictly-upper coordinates.
double conjugation_jacobian(std::span<const double> a, const Tolerances& tol = kDefaultTolerances);

/// prod_i b_i^{i(n-i)-1} with n = b.size() + 1.
double siegel_density(std::span<const double> b);

/// Haar-uniform element of SO_n: Gram-Schmidt of a Gaussian matrix with positive pivots,
/// then the last column negated if the determinant came out -1.
SquareMatrix sample_haar_so(int n, RngStream& rng);

/// Gaussian matrix rescaled to determinant +1 (first column negated when det < 0).
SquareMatrix sample_gaussian_sl(int n, RngStream& rng);

/// b_i log-uniform on [b_min, t], u_ij uniform on [-lambda, lambda], k Haar on SO_n.
/// weight = siegel_density(b) * prod b_i, so that mean(weight) * log(t/b_min)^(n-1) estimates
/// the integral of siegel_density over [b_min, t]^(n-1).
SiegelCoordinatePoint sample_siegel_point(int n, const SiegelParams& p, double b_min,
                                          RngStream& rng);

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights on [-1, 1]; exact for polynomials of degree 2*order - 1.
GaussLegendreRule gauss_legendre(int order);

inline constexpr int kQuadratureOrder = 64;

/// (1/2) * integral over (0, t]^(n-1) of siegel_density, by a per-dimension Gauss-Legendre
/// product rule. Throws ToleranceNotMet when it disagrees with a_integral_closed_form by more
/// than rel_tol.
double a_integral_quadrature(int n, double t, double rel_tol = 1e-10);

/// (1/2) t^{n(n^2-1)/6} / ((n-1)!)^2.
double a_integral_closed_form(int n, double t);

/// (1/2) * integral over [b_min, t]^(n-1) of siegel_density, in closed form.
double truncated_a_integral(int n, double t, double b_min);

/// Relative mass lost by cutting (0, t] to [b_min, t]: bounded by (n-1) (b_min/t)^{e+1} with
/// e = n-2 the smallest density exponent.
double truncation_bound(int n, double t, double b_min);

/// Integral of prod_{i<j} a_i/a_j against prod_{i<n} da_i/a_i over
/// {b_min <= a_i/a_{i+1} <= t}, computed directly in a-coordinates (n = 2 or 3) with the
/// region split along its kinks. Used to check the change of variables to b-coordinates.
double a_coordinate_integral_quadrature(int n, double t, double b_min);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Hit-or-miss estimate of the same a-coordinate integral over a bounding box of the region.
MonteCarloEstimate a_coordinate_integral_mc(int n, double t, double b_min,
                                            std::uint64_t samples, RngStream& rng);

}  // namespace siegel
