#include "siegel/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "siegel/error.hpp"

namespace siegel {

namespace {

void require_dimension(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "matrix dimension must be >= 2");
}

}  // namespace

SquareMatrix::SquareMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {
  require_dimension(n);
}

SquareMatrix::SquareMatrix(int n, std::vector<double> row_major)
    : n_(n), data_(std::move(row_major)) {
  require_dimension(n);
  if (data_.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorKind::MalformedInput, "expected n*n entries");
  for (double x : data_)
    if (!std::isfinite(x)) throw Error(ErrorKind::MalformedInput, "non-finite matrix entry");
}

SquareMatrix SquareMatrix::identity(int n) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::diagonal(std::span<const double> diag) {
  SquareMatrix m(static_cast<int>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) m(int(i), int(i)) = diag[i];
  return m;
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::MalformedInput, "matrix rows must all have length n");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return SquareMatrix(n, std::move(flat));
}

SquareMatrix SquareMatrix::transpose() const {
  SquareMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SquareMatrix::determinant() const {
  std::vector<double> lu = data_;
  const int n = n_;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(lu[r * n + c]) > std::abs(lu[pivot * n + c])) pivot = r;
    if (lu[pivot * n + c] == 0.0) return 0.0;
    if (pivot != c) {
      for (int j = 0; j < n; ++j) std::swap(lu[c * n + j], lu[pivot * n + j]);
      det = -det;
    }
    const double p = lu[c * n + c];
    det *= p;
    for (int r = c + 1; r < n; ++r) {
      const double f = lu[r * n + c] / p;
      if (f == 0.0) continue;
      for (int j = c + 1; j < n; ++j) lu[r * n + j] -= f * lu[c * n + j];
    }
  }
  return det;
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

void SquareMatrix::scale(double factor) {
  for (double& x : data_) x *= factor;
}

void SquareMatrix::negate_column(int j) {
  for (int i = 0; i < n_; ++i) (*this)(i, j) = -(*this)(i, j);
}

SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs) {
  if (lhs.n_ != rhs.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const int n = lhs.n_;
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const double a = lhs(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

double max_abs_diff(const SquareMatrix& lhs, const SquareMatrix& rhs) {
  if (lhs.size() != rhs.size()) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  double m = 0.0;
  auto a = lhs.entries();
  auto b = rhs.entries();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double orthogonality_defect(const SquareMatrix& k) {
  const int n = k.size();
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int r = 0; r < n; ++r) dot += k(r, i) * k(r, j);
      m = std::max(m, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  return m;
}

IntMatrix::IntMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n) {
  require_dimension(n);
}

IntMatrix::IntMatrix(int n, std::vector<mpz_class> row_major)
    : n_(n), data_(std::move(row_major)) {
  require_dimension(n);
  if (data_.size() != static_cast<std::size_t>(n) * n)
    throw Error(ErrorKind::MalformedInput, "expected n*n entries");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<mpz_class> flat;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::MalformedInput, "matrix rows must all have length n");
    for (long v : row) flat.emplace_back(v);
  }
  return IntMatrix(n, std::move(flat));
}

mpz_class IntMatrix::determinant() const {
  // Bareiss: every intermediate division is exact.
  std::vector<mpz_class> m = data_;
  const int n = n_;
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k * n + k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r * n + k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[swap_row * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i * n + j] = v;
      }
    prev = m[k * n + k];
  }
  mpz_class det = m[(n - 1) * n + (n - 1)];
  return sign > 0 ? det : mpz_class(-det);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

SquareMatrix IntMatrix::to_real() const {
  std::vector<double> flat;
  flat.reserve(data_.size());
  for (const auto& v : data_) flat.push_back(v.get_d());
  return SquareMatrix(n_, std::move(flat));
}

mpz_class IntMatrix::max_abs() const {
  mpz_class m = 0;
  for (const auto& v : data_) {
    mpz_class a = abs(v);
    if (a > m) m = a;
  }
  return m;
}

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs) {
  if (lhs.n_ != rhs.n_) throw Error(ErrorKind::InvalidArgument, "dimension mismatch");
  const int n = lhs.n_;
  IntMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (lhs(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += lhs(i, k) * rhs(k, j);
    }
  return out;
}

UnimodularIntMatrix::UnimodularIntMatrix(IntMatrix m) : m_(std::move(m)) {
  if (m_.determinant() != 1)
    throw Error(ErrorKind::NotUnimodular, "integer matrix determinant is not +1");
}

UnimodularIntMatrix UnimodularIntMatrix::identity(int n) {
  return UnimodularIntMatrix(IntMatrix::identity(n));
}

UnimodularIntMatrix UnimodularIntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  return UnimodularIntMatrix(IntMatrix::from_rows(rows));
}

UnimodularIntMatrix operator*(const UnimodularIntMatrix& lhs, const UnimodularIntMatrix& rhs) {
  return UnimodularIntMatrix(lhs.m_ * rhs.m_);
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < m.size(); ++i) {
    out << (i ? ",[" : "[");
    for (int j = 0; j < m.size(); ++j) out << (j ? "," : "") << m(i, j).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace siegel
