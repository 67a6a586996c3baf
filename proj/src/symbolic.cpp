#include "siegel/symbolic.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "siegel/error.hpp"
#include "siegel/special.hpp"

namespace siegel {

namespace {

// Callers may build mpq_class(num, den) without reducing it.
mpq_class reduced(mpq_class q) {
  q.canonicalize();
  return q;
}

// Primes up to m by a simple sieve.
std::vector<unsigned long> primes_up_to(unsigned long m) {
  std::vector<bool> composite(m + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p <= m; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (unsigned long q = p * p; q <= m; q += p) composite[q] = true;
  }
  return out;
}

// Trial-division factorization; only ever applied to modest integers.
void factor_into(mpz_class v, const mpq_class& e, std::map<unsigned long, mpq_class>& out) {
  if (v < 0) v = -v;
  for (unsigned long p = 2; v > 1; p = (p == 2 ? 3 : p + 2)) {
    if (mpz_class(p) * p > v) {
      if (!v.fits_ulong_p())
        throw Error(ErrorKind::InvalidArgument, "rational factor has a prime beyond 2^64");
      out[v.get_ui()] += e;
      break;
    }
    while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
      out[p] += e;
      v /= p;
    }
  }
}

template <class M>
void erase_zero(M& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == 0)
      it = m.erase(it);
    else
      ++it;
  }
}

std::string rational_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// "x", "sqrt(x)", "x^3", "x^(3/2)" for a positive exponent e.
std::string power_string(const std::string& base, const mpq_class& e, bool atomic) {
  if (e == 1) return base;
  if (e == mpq_class(1, 2)) return "sqrt(" + base + ")";
  const std::string b = atomic ? base : "(" + base + ")";
  if (e.get_den() == 1) return b + "^" + rational_string(e);
  return b + "^(" + rational_string(e) + ")";
}

std::string gamma_arg(int i) {
  return i % 2 == 0 ? std::to_string(i / 2) : std::to_string(i) + "/2";
}

}  // namespace

SymbolicVolume SymbolicVolume::rational(const mpq_class& q) {
  if (!(q > 0)) throw Error(ErrorKind::InvalidArgument, "symbolic rational must be positive");
  SymbolicVolume v;
  v.add_rational(reduced(q), 1);
  return v;
}

SymbolicVolume SymbolicVolume::prime_power(unsigned long p, const mpq_class& e) {
  SymbolicVolume v;
  v.add_rational(mpq_class(p), reduced(e));
  return v;
}

SymbolicVolume SymbolicVolume::pi_power(const mpq_class& e) {
  SymbolicVolume v;
  v.pi_ = reduced(e);
  return v;
}

SymbolicVolume SymbolicVolume::gamma_half(int i, long e) {
  if (i < 1) throw Error(ErrorKind::InvalidArgument, "Gamma(i/2) needs i >= 1");
  SymbolicVolume v;
  v.gamma_half_[i] = e;
  v.normalize();
  return v;
}

SymbolicVolume SymbolicVolume::zeta_value(int i, long e) {
  if (i < 2) throw Error(ErrorKind::InvalidArgument, "zeta(i) needs i >= 2");
  SymbolicVolume v;
  v.zeta_[i] = e;
  v.normalize();
  return v;
}

SymbolicVolume SymbolicVolume::factorial(int i, long e) {
  if (i < 0) throw Error(ErrorKind::InvalidArgument, "factorial needs i >= 0");
  SymbolicVolume v;
  v.factorial_[i] = e;
  v.normalize();
  return v;
}

SymbolicVolume SymbolicVolume::symbol(const std::string& name, double value, const mpq_class& e) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorKind::InvalidArgument, "symbol value must be positive and finite");
  SymbolicVolume v;
  v.symbols_[name] = Symbol{std::log(value), reduced(e)};
  v.normalize();
  return v;
}


void SymbolicVolume::add_rational(const mpq_class& q, const mpq_class& e) {
  factor_into(q.get_num(), e, primes_);
  factor_into(q.get_den(), -e, primes_);
  normalize();
}

void SymbolicVolume::normalize() {
  erase_zero(primes_);
  erase_zero(gamma_half_);
  erase_zero(zeta_);
  erase_zero(factorial_);
  // Gamma(1) = Gamma(2) = 0! = 1! = 1.
  gamma_half_.erase(2);
  gamma_half_.erase(4);
  factorial_.erase(0);
  factorial_.erase(1);
  for (auto it = symbols_.begin(); it != symbols_.end();) {
    if (it->second.exponent == 0)
      it = symbols_.erase(it);
    else
      ++it;
  }
}

SymbolicVolume& SymbolicVolume::operator*=(const SymbolicVolume& rhs) {
  // Touch only the keys of rhs so long products stay linear in their length.
  auto merge = [](auto& into, const auto& from) {
    for (const auto& [key, e] : from) {
      auto [it, fresh] = into.try_emplace(key, e);
      if (!fresh) it->second += e;
      if (it->second == 0) into.erase(it);
    }
  };
  merge(primes_, rhs.primes_);
  pi_ += rhs.pi_;
  merge(gamma_half_, rhs.gamma_half_);
  merge(zeta_, rhs.zeta_);
  merge(factorial_, rhs.factorial_);
  for (const auto& [name, s] : rhs.symbols_) {
    auto [it, fresh] = symbols_.try_emplace(name, s);
    if (!fresh) {
      if (it->second.log_base != s.log_base)
        throw Error(ErrorKind::InvalidArgument, "symbol '" + name + "' bound to two values");
      it->second.exponent += s.exponent;
    }
    if (it->second.exponent == 0) symbols_.erase(it);
  }
  return *this;
}

SymbolicVolume& SymbolicVolume::operator/=(const SymbolicVolume& rhs) {
  return *this *= rhs.pow(-1);
}

SymbolicVolume SymbolicVolume::pow(const mpq_class& e_in) const {
  const mpq_class e = reduced(e_in);
  SymbolicVolume out = *this;
  for (auto& [p, x] : out.primes_) x *= e;
  out.pi_ *= e;
  auto scale_integer = [&](std::map<int, long>& m, const char* what) {
    for (auto& [i, x] : m) {
      const mpq_class r = mpq_class(x) * e;
      if (r.get_den() != 1 || !r.get_num().fits_slong_p())
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + " factor raised to a non-integer power");
      x = r.get_num().get_si();
    }
  };
  scale_integer(out.gamma_half_, "Gamma");
  scale_integer(out.zeta_, "zeta");
  scale_integer(out.factorial_, "factorial");
  for (auto& [name, s] : out.symbols_) s.exponent *= e;
  out.normalize();
  return out;
}

double SymbolicVolume::log_value() const {
  double sum = 0.0;
  for (const auto& [p, e] : primes_) sum += e.get_d() * std::log(double(p));
  sum += pi_.get_d() * std::log(std::numbers::pi);
  for (const auto& [i, e] : gamma_half_) sum += double(e) * log_gamma(0.5 * i);
  for (const auto& [i, e] : zeta_) sum += double(e) * log_zeta(i);
  for (const auto& [i, e] : factorial_) sum += double(e) * log_gamma(i + 1.0);
  for (const auto& [name, s] : symbols_) sum += s.exponent.get_d() * s.log_base;
  return sum;
}

double SymbolicVolume::value() const { return std::exp(log_value()); }

mpq_class SymbolicVolume::prime_exponent(unsigned long p) const {
  auto it = primes_.find(p);
  return it == primes_.end() ? mpq_class(0) : it->second;
}

mpq_class SymbolicVolume::coeff() const {
  mpq_class c = 1;
  for (const auto& [p, e] : primes_) {
    if (p == 2 || p == 3) continue;
    if (e.get_den() != 1 || !e.get_num().fits_slong_p())
      throw Error(ErrorKind::InvalidArgument, "coefficient is not rational");
    mpz_class pw;
    const long k = e.get_num().get_si();
    mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k < 0)
      c /= pw;
    else
      c *= pw;
  }
  return c;
}

SymbolicVolume SymbolicVolume::canonical() const {
  SymbolicVolume out;
  out.primes_ = primes_;
  out.pi_ = pi_;
  out.zeta_ = zeta_;
  out.symbols_ = symbols_;
  std::map<int, long> facts = factorial_;
  for (const auto& [i, e] : gamma_half_) {
    if (i % 2 == 0) {
      facts[i / 2 - 1] += e;  // Gamma(k) = (k-1)!
    } else {
      const int k = (i - 1) / 2;  // Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!)
      facts[2 * k] += e;
      facts[k] -= e;
      out.pi_ += mpq_class(e) / 2;
      out.primes_[2] -= mpq_class(2 * k) * e;
    }
  }
  int top = 1;
  for (const auto& [i, e] : facts)
    if (e != 0) top = std::max(top, i);
  const auto primes = primes_up_to(static_cast<unsigned long>(top));
  for (const auto& [m, e] : facts) {
    if (e == 0 || m < 2) continue;
    for (unsigned long p : primes) {
      if (p > static_cast<unsigned long>(m)) break;
      long v = 0;  // Legendre: v_p(m!) = sum_j floor(m / p^j)
      for (unsigned long q = p; q <= static_cast<unsigned long>(m); q *= p) v += m / q;
      out.primes_[p] += mpq_class(v) * e;
    }
  }
  out.normalize();
  return out;
}

bool operator==(const SymbolicVolume& lhs, const SymbolicVolume& rhs) {
  const SymbolicVolume a = lhs.canonical();
  const SymbolicVolume b = rhs.canonical();
  return a.primes_ == b.primes_ && a.pi_ == b.pi_ && a.zeta_ == b.zeta_ &&
         a.symbols_ == b.symbols_;
}

std::string SymbolicVolume::to_string() const {
  std::vector<std::string> num, den;
  auto push = [&](const mpq_class& e, const std::string& text_pos, const std::string& text_neg) {
    (e > 0 ? num : den).push_back(e > 0 ? text_pos : text_neg);
  };
  for (const auto& [p, e] : primes_) {
    const std::string base = std::to_string(p);
    push(e, power_string(base, e, true), power_string(base, -e, true));
  }
  if (pi_ != 0) push(pi_, power_string("pi", pi_, true), power_string("pi", -pi_, true));
  for (const auto& [i, e] : gamma_half_) {
    const std::string base = "Gamma(" + gamma_arg(i) + ")";
    push(e, power_string(base, e, true), power_string(base, -e, true));
  }
  for (const auto& [i, e] : zeta_) {
    const std::string base = "zeta(" + std::to_string(i) + ")";
    push(e, power_string(base, e, true), power_string(base, -e, true));
  }
  for (const auto& [i, e] : factorial_) {
    const std::string base = std::to_string(i) + "!";
    push(e, power_string(base, e, false), power_string(base, -e, false));
  }
  for (const auto& [name, s] : symbols_)
    push(s.exponent, power_string(name, s.exponent, true), power_string(name, -s.exponent, true));

  auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " * " : "") + parts[i];
    return out;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (den.size() == 1) out += " / " + den.front();
  if (den.size() > 1) out += " / (" + join(den) + ")";
  return out;
}

}  // namespace siegel
