#include "siegel/haar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "siegel/error.hpp"

namespace siegel {

namespace {

constexpr Tolerances kSamplingTolerances{1e-10, 1e-10, 1e-9, 1e-300,
                                         std::numeric_limits<double>::infinity()};

void require_positive(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorKind::NonPositiveEntry, what);
}

// Exponent of b_i (1-based i) in the Siegel density for SL_n.
int density_exponent(int n, int i) { return i * (n - i) - 1; }

}  // namespace

SquareMatrix SiegelCoordinatePoint::to_matrix() const {
  const int n = static_cast<int>(b.size()) + 1;
  std::vector<double> a = diagonal_from_ratios(b);
  SquareMatrix au = u;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) au(i, j) *= a[i];
  return k * au;
}

double conjugation_jacobian(std::span<const double> a, const Tolerances& tol) {
  require_positive(a, "conjugation_jacobian needs positive diagonal entries");
  double log_prod = 0.0;
  for (double x : a) log_prod += std::log(x);
  if (std::abs(std::expm1(log_prod)) > tol.det_tol)
    throw Error(ErrorKind::InvalidArgument, "diagonal entries must multiply to 1");
  // prod_{i<j} a_i/a_j = prod_i a_i^{n-1-2i} (0-based i).
  const int n = static_cast<int>(a.size());
  double log_j = 0.0;
  for (int i = 0; i < n; ++i) log_j += double(n - 1 - 2 * i) * std::log(a[i]);
  return std::exp(log_j);
}

double siegel_density(std::span<const double> b) {
  require_positive(b, "siegel_density needs positive b-coordinates");
  const int n = static_cast<int>(b.size()) + 1;
  double d = 1.0;
  for (int i = 1; i < n; ++i) d *= std::pow(b[i - 1], density_exponent(n, i));
  return d;
}

SquareMatrix sample_haar_so(int n, RngStream& rng) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "sample_haar_so needs n >= 2");
  SquareMatrix z(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = rng.normal();
  SquareMatrix q = orthonormalize_columns(z, kSamplingTolerances);
  if (q.determinant() < 0.0) q.negate_column(n - 1);
  return q;
}

SquareMatrix sample_gaussian_sl(int n, RngStream& rng) {
  for (;;) {
    SquareMatrix z(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) z(i, j) = rng.normal();
    double det = z.determinant();
    if (std::abs(det) < 1e-8) continue;
    if (det < 0.0) {
      z.negate_column(0);
      det = -det;
    }
    z.scale(std::pow(det, -1.0 / n));
    return z;
  }
}

SiegelCoordinatePoint sample_siegel_point(int n, const SiegelParams& p, double b_min,
                                          RngStream& rng) {
  p.validate();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "sample_siegel_point needs n >= 2");
  if (!(b_min > 0.0) || !(b_min < p.t))
    throw Error(ErrorKind::InvalidRange, "need 0 < b_min < t");
  SiegelCoordinatePoint pt;
  const double log_span = std::log(p.t / b_min);
  double correction = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    const double bi = b_min * std::exp(log_span * rng.uniform());
    pt.b.push_back(std::min(bi, p.t));
    correction *= pt.b.back();
  }
  pt.u = SquareMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pt.u(i, j) = rng.uniform(-p.lambda, p.lambda);
  pt.k = sample_haar_so(n, rng);
  pt.weight = siegel_density(pt.b) * correction;
  return pt;
}

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "quadrature order must be >= 1");
  GaussLegendreRule rule{std::vector<double>(order), std::vector<double>(order)};
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

double a_integral_closed_form(int n, double t) {
  if (n < 2 || !(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "need n >= 2 and t > 0");
  const double exponent = double(n) * (double(n) * n - 1.0) / 6.0;
  const double log_fact = std::lgamma(double(n));
  return 0.5 * std::exp(exponent * std::log(t) - 2.0 * log_fact);
}

double a_integral_quadrature(int n, double t, double rel_tol) {
  if (n < 2 || !(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "need n >= 2 and t > 0");
  const GaussLegendreRule& rule = gauss_legendre(kQuadratureOrder);
  // The integrand separates, so the (n-1)-dimensional product rule is a product of
  // one-dimensional rules on [0, t].
  double result = 0.5;
  for (int i = 1; i < n; ++i) {
    const int e = density_exponent(n, i);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double b = 0.5 * t * (rule.nodes[q] + 1.0);
      sum += rule.weights[q] * std::pow(b, e);
    }
    result *= 0.5 * t * sum;
  }
  const double expected = a_integral_closed_form(n, t);
  if (std::abs(result - expected) > rel_tol * std::abs(expected))
    throw Error(ErrorKind::ToleranceNotMet, "quadrature disagrees with closed form");
  return result;
}

double truncated_a_integral(int n, double t, double b_min) {
  double r = 0.5;
  for (int i = 1; i < n; ++i) {
    const int e1 = density_exponent(n, i) + 1;
    r *= (std::pow(t, e1) - std::pow(b_min, e1)) / e1;
  }
  return r;
}

double truncation_bound(int n, double t, double b_min) {
  double bound = 0.0;
  for (int i = 1; i < n; ++i) bound += std::pow(b_min / t, density_exponent(n, i) + 1);
  return bound;
}

double a_coordinate_integral_quadrature(int n, double t, double b_min) {
  const double lb = std::log(b_min), lt = std::log(t);
  if (!(b_min > 0.0) || !(b_min < t)) throw Error(ErrorKind::InvalidRange, "need 0 < b_min < t");
  if (n == 2) {
    // a = (e^s, e^-s), integrand a_1/a_2 = e^{2s}, region lb <= 2s <= lt.
    const GaussLegendreRule& rule = gauss_legendre(kQuadratureOrder);
    const double lo = lb / 2, hi = lt / 2;
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = lo + 0.5 * (hi - lo) * (rule.nodes[q] + 1.0);
      sum += rule.weights[q] * std::exp(2.0 * s);
    }
    return 0.5 * (hi - lo) * sum;
  }
  if (n == 3) {
    // a = (e^s1, e^s2, e^{-s1-s2}); integrand a1^2/a3^2 = e^{4 s1 + 2 s2};
    // lb <= s1 - s2 <= lt and lb <= s1 + 2 s2 <= lt. Outer variable s2 in [-L/3, L/3] with a
    // kink in the inner limits at s2 = 0.
    const GaussLegendreRule& rule = gauss_legendre(kQuadratureOrder);
    const double span = (lt - lb) / 3.0;
    auto inner = [&](double s2) {
      const double lo = std::max(s2 + lb, lb - 2.0 * s2);
      const double hi = std::min(s2 + lt, lt - 2.0 * s2);
      if (hi <= lo) return 0.0;
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double s1 = lo + 0.5 * (hi - lo) * (rule.nodes[q] + 1.0);
        sum += rule.weights[q] * std::exp(4.0 * s1 + 2.0 * s2);
      }
      return 0.5 * (hi - lo) * sum;
    };
    double total = 0.0;
    for (auto [lo, hi] : {std::pair{-span, 0.0}, std::pair{0.0, span}}) {
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        sum += rule.weights[q] * inner(lo + 0.5 * (hi - lo) * (rule.nodes[q] + 1.0));
      total += 0.5 * (hi - lo) * sum;
    }
    return total;
  }
  throw Error(ErrorKind::InvalidArgument, "a-coordinate quadrature is implemented for n = 2, 3");
}

MonteCarloEstimate a_coordinate_integral_mc(int n, double t, double b_min,
                                            std::uint64_t samples, RngStream& rng) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need n >= 2");
  if (!(b_min > 0.0) || !(b_min < t)) throw Error(ErrorKind::InvalidRange, "need 0 < b_min < t");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
  const int d = n - 1;
  // The region is the image of a box under a linear map in log coordinates, so its bounding
  // box is spanned by the images of the box corners.
  std::vector<double> lo(d, INFINITY), hi(d, -INFINITY);
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    std::vector<double> b(d);
    for (int i = 0; i < d; ++i) b[i] = (mask >> i) & 1u ? t : b_min;
    std::vector<double> a = diagonal_from_ratios(b);
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], std::log(a[i]));
      hi[i] = std::max(hi[i], std::log(a[i]));
    }
  }
  double box = 1.0;
  for (int i = 0; i < d; ++i) box *= hi[i] - lo[i];

  std::vector<double> s(n);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t m = 0; m < samples; ++m) {
    double last = 0.0;
    for (int i = 0; i < d; ++i) {
      s[i] = rng.uniform(lo[i], hi[i]);
      last -= s[i];
    }
    s[d] = last;
    double value = 0.0;
    bool inside = true;
    for (int i = 0; i < d && inside; ++i) {
      const double log_b = s[i] - s[i + 1];
      inside = log_b >= std::log(b_min) && log_b <= std::log(t);
    }
    if (inside) {
      double log_f = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) log_f += s[i] - s[j];
      value = box * std::exp(log_f);
    }
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / double(samples);
  const double var = std::max(0.0, sum_sq / double(samples) - mean * mean);
  return {mean, std::sqrt(var / double(samples - 1)), samples};
}

}  // namespace siegel
