#include "siegel/iwasawa.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

SiegelParams SiegelParams::minimal() { return {2.0 / std::sqrt(3.0), 0.5}; }

void SiegelParams::validate() const {
  if (!(t > 0.0) || !(lambda > 0.0) || !std::isfinite(t) || !std::isfinite(lambda))
    throw Error(ErrorKind::InvalidArgument, "Siegel parameters t and lambda must be positive");
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::outside: return "outside";
    case Membership::boundary: return "boundary";
  }
  return "unknown";
}

namespace {

// Orthonormalizes columns of g (rows of g when `rows` is set, bottom-up) into q and
// returns the Gram-Schmidt coefficients r with r(l, i) = <x_i, y_l> and r(i, i) = |y~_i|.
// Each projection is applied twice, which keeps q orthogonal to working precision.
void gram_schmidt(const SquareMatrix& g, bool rows, SquareMatrix& q, SquareMatrix& r,
                  const Tolerances& tol) {
  const int n = g.size();
  q = SquareMatrix(n);
  r = SquareMatrix(n);
  std::vector<double> v(n);
  // Vector number `step` is column step of g, or row n-1-step of g in row mode.
  auto source = [&](int step, int c) { return rows ? g(n - 1 - step, c) : g(c, step); };
  auto basis = [&](int step, int c) -> double& { return rows ? q(n - 1 - step, c) : q(c, step); };
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < n; ++c) v[c] = source(i, c);
    for (int pass = 0; pass < 2; ++pass)
      for (int l = 0; l < i; ++l) {
        double dot = 0.0;
        for (int c = 0; c < n; ++c) dot += v[c] * basis(l, c);
        for (int c = 0; c < n; ++c) v[c] -= dot * basis(l, c);
        r(l, i) += dot;
      }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > tol.singular_tol))
      throw Error(ErrorKind::NonInvertible, "Gram-Schmidt pivot below singular_tol");
    r(i, i) = norm;
    for (int c = 0; c < n; ++c) basis(i, c) = v[c] / norm;
  }
  double lo = r(0, 0), hi = r(0, 0);
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, r(i, i));
    hi = std::max(hi, r(i, i));
  }
  if (hi / lo > tol.cond_max)
    throw Error(ErrorKind::NonInvertible, "condition estimate exceeds cond_max");
}

void check_unimodular(const SquareMatrix& q, std::span<const double> pivots,
                      const Tolerances& tol) {
  double prod = 1.0;
  for (double p : pivots) prod *= p;
  if (q.determinant() < 0.0)
    throw Error(ErrorKind::NotUnimodular, "determinant is negative");
  if (std::abs(prod - 1.0) > tol.det_tol)
    throw Error(ErrorKind::NotUnimodular, "determinant differs from 1 by more than det_tol");
}

}  // namespace

IwasawaFactors decompose(const SquareMatrix& g, const Tolerances& tol) {
  const int n = g.size();
  SquareMatrix q, r;
  gram_schmidt(g, false, q, r, tol);
  IwasawaFactors f{std::move(q), std::vector<double>(n), SquareMatrix::identity(n), {}};
  for (int i = 0; i < n; ++i) f.a[i] = r(i, i);
  check_unimodular(f.k, f.a, tol);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f.u(i, j) = r(i, j) / f.a[i];
  f.b = ratios_from_diagonal(f.a);
  return f;
}

SquareMatrix recompose(const IwasawaFactors& f) {
  SquareMatrix au = f.u;
  const int n = f.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) au(i, j) *= f.a[i];
  return f.k * au;
}

SquareMatrix orthonormalize_columns(const SquareMatrix& x, const Tolerances& tol) {
  SquareMatrix q, r;
  gram_schmidt(x, false, q, r, tol);
  return q;
}

SquareMatrix unit_upper(int n, std::span<const double> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
    throw Error(ErrorKind::InvalidArgument, "expected n(n-1)/2 strictly-upper coefficients");
  SquareMatrix u = SquareMatrix::identity(n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = coeffs[idx++];
  return u;
}

std::vector<double> strict_upper(const SquareMatrix& u) {
  std::vector<double> out;
  const int n = u.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(u(i, j));
  return out;
}

std::vector<double> ratios_from_diagonal(std::span<const double> a) {
  std::vector<double> b;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) b.push_back(a[i] / a[i + 1]);
  return b;
}

std::vector<double> diagonal_from_ratios(std::span<const double> b) {
  const std::size_t n = b.size() + 1;
  // a_i = a_n * prod_{k >= i} b_k and prod a = 1 give a_n = (prod_k b_k^k)^(-1/n).
  double log_an = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) log_an -= double(k + 1) * std::log(b[k]);
  log_an /= double(n);
  std::vector<double> a(n);
  double acc = log_an;
  a[n - 1] = std::exp(acc);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc += std::log(b[i]);
    a[i] = std::exp(acc);
  }
  return a;
}

double siegel_excess(std::span<const double> b, const SquareMatrix& u, const SiegelParams& p) {
  double excess = -INFINITY;
  for (double bi : b) excess = std::max(excess, bi - p.t);
  const int n = u.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) excess = std::max(excess, std::abs(u(i, j)) - p.lambda);
  return excess;
}

Membership classify_excess(double excess, double tol) {
  if (excess <= -tol) return Membership::inside;
  if (excess > tol) return Membership::outside;
  return Membership::boundary;
}

Membership siegel_membership(const IwasawaFactors& f, const SiegelParams& p, double tol) {
  p.validate();
  return classify_excess(siegel_excess(f.b, f.u, p), tol);
}

Membership siegel_membership(const SquareMatrix& g, const SiegelParams& p, double tol,
                             const Tolerances& tols) {
  return siegel_membership(decompose(g, tols), p, tol);
}

RowFactors decompose_rows(const SquareMatrix& h, const Tolerances& tol) {
  const int n = h.size();
  SquareMatrix q, r;
  gram_schmidt(h, true, q, r, tol);
  // Step s handles row n-1-s, so r(l, i) couples rows n-1-l and n-1-i.
  RowFactors f{SquareMatrix::identity(n), std::vector<double>(n), std::move(q)};
  for (int s = 0; s < n; ++s) f.beta[n - 1 - s] = r(s, s);
  check_unimodular(f.kappa, f.beta, tol);
  for (int s = 0; s < n; ++s)
    for (int l = 0; l < s; ++l) {
      const int row = n - 1 - s;
      const int col = n - 1 - l;
      f.nu(row, col) = r(l, s) / f.beta[col];
    }
  return f;
}

SquareMatrix recompose(const RowFactors& f) {
  SquareMatrix nb = f.nu;
  const int n = f.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) nb(i, j) *= f.beta[j];
  return nb * f.kappa;
}

SquareMatrix antitranspose(const SquareMatrix& x) {
  const int n = x.size();
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = x(n - 1 - j, n - 1 - i);
  return out;
}

IntMatrix antitranspose(const IntMatrix& x) {
  const int n = x.size();
  IntMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = x(n - 1 - j, n - 1 - i);
  return out;
}

Membership row_siegel_membership(const RowFactors& f, const SiegelParams& p, double tol) {
  p.validate();
  const int n = f.size();
  double excess = -INFINITY;
  for (int i = 0; i + 1 < n; ++i) excess = std::max(excess, f.beta[i + 1] / f.beta[i] - p.t);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) excess = std::max(excess, std::abs(f.nu(i, j)) - p.lambda);
  return classify_excess(excess, tol);
}

}  // namespace siegel
