#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace siegel {

/// Dense n x n real matrix stored row-major. Entries are always finite.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n);
  SquareMatrix(int n, std::vector<double> row_major);

  static SquareMatrix identity(int n);
  static SquareMatrix diagonal(std::span<const double> diag);
  static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int size() const noexcept { return n_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  std::span<const double> entries() const noexcept { return data_; }

  SquareMatrix transpose() const;
  /// Determinant by LU with partial pivoting.
  double determinant() const;
  double max_abs() const;
  void scale(double factor);
  /// Negates column j in place.
  void negate_column(int j);

  friend SquareMatrix operator*(const SquareMatrix& lhs, const SquareMatrix& rhs);
  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// Max-norm of lhs - rhs; both must have the same size.
double max_abs_diff(const SquareMatrix& lhs, const SquareMatrix& rhs);

/// max |k^T k - I|.
double orthogonality_defect(const SquareMatrix& k);

/// Dense n x n matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n);
  IntMatrix(int n, std::vector<mpz_class> row_major);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int size() const noexcept { return n_; }
  mpz_class& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const mpz_class& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  std::span<const mpz_class> entries() const noexcept { return data_; }

  /// Exact determinant by fraction-free (Bareiss) elimination.
  mpz_class determinant() const;
  IntMatrix transpose() const;
  SquareMatrix to_real() const;
  /// Largest absolute entry.
  mpz_class max_abs() const;

  friend IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<mpz_class> data_;
};

/// Element of SL_n(Z): an integer matrix whose exact determinant is +1.
class UnimodularIntMatrix {
 public:
  /// Throws Error(NotUnimodular) unless det(m) == 1 exactly.
  explicit UnimodularIntMatrix(IntMatrix m);

  static UnimodularIntMatrix identity(int n);
  static UnimodularIntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int size() const noexcept { return m_.size(); }
  const mpz_class& operator()(int i, int j) const { return m_(i, j); }
  const IntMatrix& matrix() const noexcept { return m_; }
  SquareMatrix to_real() const { return m_.to_real(); }

  friend UnimodularIntMatrix operator*(const UnimodularIntMatrix& lhs,
                                       const UnimodularIntMatrix& rhs);
  friend bool operator==(const UnimodularIntMatrix&, const UnimodularIntMatrix&) = default;

 private:
  IntMatrix m_;
};

/// Compact "[[a,b],[c,d]]" rendering, used for logs and cache keys.
std::string to_string(const IntMatrix& m);

}  // namespace siegel
