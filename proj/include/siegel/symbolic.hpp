#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace siegel {

/// Exact multiplicative expression
///
///   prod_p p^{e_p} * pi^{e_pi} * prod_i Gamma(i/2)^{g_i} * prod_i zeta(i)^{z_i}
///     * prod_i (i!)^{f_i} * prod_s s^{e_s}
///
/// with rational exponents on primes, pi and named numeric symbols, and integer exponents on
/// the special values. Any positive rational is stored through its prime factorization, so
/// raising to huge rational powers stays cheap and exact. Products and quotients only add
/// exponents; numbers appear only in log_value().
///
/// Equality is semantic: both sides are reduced to primes, pi, zeta and symbols first, using
/// Gamma(k) = (k-1)!, Gamma(k+1/2) = (2k)! sqrt(pi) / (4^k k!) and Legendre's formula for
/// factorials. The structural factors are kept for printing.
class SymbolicVolume {
 public:
  /// A named positive real that has no exact representation here (e.g. t = 1.3).
  struct Symbol {
    double log_base = 0.0;
    mpq_class exponent;
    friend bool operator==(const Symbol&, const Symbol&) = default;
  };

  SymbolicVolume() = default;

  static SymbolicVolume one() { return {}; }
  /// Positive rational; throws InvalidArgument for q <= 0.
  static SymbolicVolume rational(const mpq_class& q);
  static SymbolicVolume integer(long v) { return rational(mpq_class(v)); }
  static SymbolicVolume prime_power(unsigned long p, const mpq_class& e);
  static SymbolicVolume pi_power(const mpq_class& e);
  /// Gamma(i/2)^e.
  static SymbolicVolume gamma_half(int i, long e = 1);
  static SymbolicVolume zeta_value(int i, long e = 1);
  static SymbolicVolume factorial(int i, long e = 1);
  static SymbolicVolume symbol(const std::string& name, double value, const mpq_class& e = 1);

  SymbolicVolume& operator*=(const SymbolicVolume& rhs);
  SymbolicVolume& operator/=(const SymbolicVolume& rhs);
  friend SymbolicVolume operator*(SymbolicVolume lhs, const SymbolicVolume& rhs) {
    return lhs *= rhs;
  }
  friend SymbolicVolume operator/(SymbolicVolume lhs, const SymbolicVolume& rhs) {
    return lhs /= rhs;
  }

  /// Rational power. Integer-exponent factors (Gamma, zeta, factorials) need an integer
  /// result exponent; otherwise throws InvalidArgument.
  SymbolicVolume pow(const mpq_class& e) const;

  double log_value() const;
  double value() const;

  mpq_class pow2() const { return prime_exponent(2); }
  mpq_class pow3() const { return prime_exponent(3); }
  mpq_class pow_pi() const { return pi_; }
  mpq_class prime_exponent(unsigned long p) const;
  /// The rational prod_{p != 2,3} p^{e_p}; throws if some such e_p is not an integer.
  mpq_class coeff() const;

  const std::map<unsigned long, mpq_class>& primes() const { return primes_; }
  const std::map<int, long>& gamma_halves() const { return gamma_half_; }
  const std::map<int, long>& zetas() const { return zeta_; }
  const std::map<int, long>& factorials() const { return factorial_; }
  const std::map<std::string, Symbol>& symbols() const { return symbols_; }

  /// Reduced form holding only primes, pi, zeta values and symbols.
  SymbolicVolume canonical() const;

  friend bool operator==(const SymbolicVolume& lhs, const SymbolicVolume& rhs);

  /// Factored rendering such as "2^(3/2) * pi" or "zeta(2) / (sqrt(2) * pi)".
  std::string to_string() const;

 private:
  void add_rational(const mpq_class& q, const mpq_class& e);
  void normalize();

  std::map<unsigned long, mpq_class> primes_;
  mpq_class pi_ = 0;
  std::map<int, long> gamma_half_;
  std::map<int, long> zeta_;
  std::map<int, long> factorial_;
  std::map<std::string, Symbol> symbols_;
};

}  // namespace siegel
