#include "siegel/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "siegel/error.hpp"

namespace siegel {

namespace {

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6,           -1.0 / 30,   1.0 / 42,        -1.0 / 30,      5.0 / 66,
    -691.0 / 2730,     7.0 / 6,     -3617.0 / 510,   43867.0 / 798,  -174611.0 / 330,
};

}  // namespace

double log_gamma(double x) {
  if (!(x >= 0.5)) throw Error(ErrorKind::InvalidArgument, "log_gamma needs x >= 1/2");
  double shift = 1.0;
  while (x < 15.0) {
    shift *= x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
    power *= inv2;
  }
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + series - std::log(shift);
}

double zeta_minus_one(int s, double rel_tol) {
  if (s < 2) throw Error(ErrorKind::InvalidArgument, "zeta needs integer s >= 2");
  if (!(rel_tol >= 1e-15)) throw Error(ErrorKind::InvalidArgument, "zeta rel_tol below 1e-15");
  constexpr int kTerms = 10;
  const double sd = s;
  // sum_{k=2}^{N-1} k^{-s}, smallest terms first.
  double sum = 0.0;
  for (int k = kTerms - 1; k >= 2; --k) sum += std::pow(double(k), -sd);
  const double n = kTerms;
  const double n_pow = std::pow(n, -sd);
  double tail = n * n_pow / (sd - 1.0) + 0.5 * n_pow;
  // B_{2j}/(2j)! * s (s+1) ... (s+2j-2) * N^{-s-2j+1}
  double rising = sd;       // s (s+1) ... (s+2j-2)
  double factorial = 2.0;   // (2j)!
  double n_term = n_pow / n;  // N^{-s-2j+1}
  for (int j = 1; j <= 10; ++j) {
    tail += kBernoulli[j - 1] / factorial * rising * n_term;
    rising *= (sd + 2 * j - 1) * (sd + 2 * j);
    factorial *= (2.0 * j + 1) * (2.0 * j + 2);
    n_term /= n * n;
  }
  return sum + tail;
}

double zeta(int s, double rel_tol) { return 1.0 + zeta_minus_one(s, rel_tol); }

double log_zeta(int s) { return std::log1p(zeta_minus_one(s)); }

}  // namespace siegel
