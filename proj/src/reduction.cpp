#include "siegel/reduction.hpp"

#include <cmath>

namespace siegel {

std::string_view to_string(ReductionStatus s) {
  return s == ReductionStatus::reduced ? "reduced" : "budget_exhausted";
}

int default_max_iter(int n) { return 10 * n * n; }

double reduction_potential(const IwasawaFactors& f) {
  double total = 0.0, prefix = 0.0;
  for (int k = 0; k + 1 < f.size(); ++k) {
    prefix += std::log(f.a[k]);
    total += prefix;
  }
  return total;
}

namespace {

// Working state: the current matrix is g * m, and m_inv = m^{-1} is the running gamma.
struct Basis {
  IntMatrix m;
  IntMatrix m_inv;

  // column j of m -= c * column i; row i of m_inv += c * row j
  void shear(int i, int j, long c) {
    const int n = m.size();
    for (int r = 0; r < n; ++r) m(r, j) -= c * m(r, i);
    for (int col = 0; col < n; ++col) m_inv(i, col) += c * m_inv(j, col);
  }

  // new column i = old column i+1, new column i+1 = -old column i; inverse acts on rows
  void exchange(int i) {
    const int n = m.size();
    for (int r = 0; r < n; ++r) {
      mpz_class keep = m(r, i);
      m(r, i) = m(r, i + 1);
      m(r, i + 1) = -keep;
    }
    for (int col = 0; col < n; ++col) {
      mpz_class keep = m_inv(i, col);
      m_inv(i, col) = m_inv(i + 1, col);
      m_inv(i + 1, col) = -keep;
    }
  }
};

void size_reduce(Basis& basis, SquareMatrix& u) {
  const int n = u.size();
  for (int j = 1; j < n; ++j)
    for (int i = j - 1; i >= 0; --i) {
      const double c = std::nearbyint(u(i, j));
      if (c == 0.0) continue;
      for (int k = 0; k < i; ++k) u(k, j) -= c * u(k, i);
      u(i, j) -= c;
      basis.shear(i, j, static_cast<long>(c));
    }
}

}  // namespace

ReductionResult siegel_reduce(const SquareMatrix& g, int max_iter, const Tolerances& tol) {
  const int n = g.size();
  if (max_iter < 0) max_iter = default_max_iter(n);
  const double t = SiegelParams::minimal().t;
  // Exchanges at b_i within rounding noise of t would not lower the potential.
  const double threshold = t * (1.0 + 1e-12);

  Basis basis{IntMatrix::identity(n), IntMatrix::identity(n)};
  ReductionResult result{UnimodularIntMatrix::identity(n), g, 0,
                         ReductionStatus::budget_exhausted, decompose(g, tol), {}};
  result.potential.push_back(reduction_potential(result.factors));

  for (;;) {
    SquareMatrix u = result.factors.u;
    size_reduce(basis, u);
    // Re-derive from the exact integer basis so rounding never accumulates.
    result.sigma = g * basis.m.to_real();
    result.factors = decompose(result.sigma, tol);

    int swap_at = -1;
    for (int i = 0; i + 1 < n; ++i)
      if (result.factors.b[i] > threshold) {
        swap_at = i;
        break;
      }
    if (swap_at < 0) {
      result.status = ReductionStatus::reduced;
      break;
    }
    if (result.iterations >= max_iter) break;
    basis.exchange(swap_at);
    ++result.iterations;
    result.sigma = g * basis.m.to_real();
    result.factors = decompose(result.sigma, tol);
    result.potential.push_back(reduction_potential(result.factors));
  }
  result.gamma = UnimodularIntMatrix(basis.m_inv);
  return result;
}

}  // namespace siegel
