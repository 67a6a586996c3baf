#include "siegel/volumes.hpp"

#include <cmath>

#include "siegel/bounds.hpp"
#include "siegel/error.hpp"

namespace siegel {

namespace {

using SV = SymbolicVolume;

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, what);
}

SV two(const mpq_class& e) { return SV::prime_power(2, e); }
SV three(const mpq_class& e) { return SV::prime_power(3, e); }
SV pi(const mpq_class& e) { return SV::pi_power(e); }

// prod_{i=2}^n Gamma(i/2)^e
SV gamma_product(int n, long e) {
  SV out;
  for (int i = 2; i <= n; ++i) out *= SV::gamma_half(i, e);
  return out;
}

SV zeta_product(int n, long e) {
  SV out;
  for (int i = 2; i <= n; ++i) out *= SV::zeta_value(i, e);
  return out;
}

// prod_{i=1}^{m} (i!)^e
SV factorial_product(int m, long e) {
  SV out;
  for (int i = 1; i <= m; ++i) out *= SV::factorial(i, e);
  return out;
}

mpq_class q(long num, long den = 1) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

SV sphere_volume(int m) {
  require(m >= 1, "sphere dimension must be >= 1");
  return SV::integer(2) * pi(q(m + 1, 2)) / SV::gamma_half(m + 1);
}

SV vol_so(int n) {
  require(n >= 1, "vol_so needs n >= 1");
  SV out = two(q(n - 1) * q(n + 4, 4));
  for (int i = 2; i <= n; ++i) out *= pi(q(i, 2)) / SV::gamma_half(i);
  return out;
}

SV vol_so_recursive(int n) {
  require(n >= 1, "vol_so needs n >= 1");
  SV out;
  for (int m = 2; m <= n; ++m) out *= two(q(m - 1, 2)) * sphere_volume(m - 1);
  return out;
}

mpz_class signed_perm_order(int n) {
  require(n >= 1, "signed_perm_order needs n >= 1");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f << (n - 1);
}

SV parameter_value(double x, const std::string& name) {
  require(x > 0.0 && std::isfinite(x), "Siegel parameter must be positive and finite");
  if (std::abs(x - 2.0 / std::sqrt(3.0)) <= 4e-16 * x) return two(1) * three(q(-1, 2));
  for (long den = 1; den <= 1000; ++den) {
    const double num = std::round(x * double(den));
    if (num >= 1.0 && num < 9.0e15 && num / double(den) == x)
      return SV::rational(q(static_cast<long>(num), den));
  }
  return SV::symbol(name, x);
}

SV vol_siegel(int n, const SiegelParams& p) {
  require(n >= 2, "vol_siegel needs n >= 2");
  p.validate();
  const SV two_lambda = SV::integer(2) * parameter_value(p.lambda, "lambda");
  const SV t = parameter_value(p.t, "t");
  return SV::rational(q(1, 2)) * vol_so(n) * two_lambda.pow(q(long(n) * (n - 1), 2)) *
         t.pow(q(long(n) * (long(n) * n - 1), 6)) * SV::factorial(n - 1, -2);
}

SV vol_quotient(int n) {
  require(n >= 2, "vol_quotient needs n >= 2");
  SV out = two(q(1, 2)) * zeta_product(n, 1);
  for (int i = 1; i <= n - 1; ++i) out /= two(i - 1) * SV::factorial(i);
  return out;
}

SV ratio_C(int n) { return vol_siegel(n, SiegelParams::minimal()) / vol_quotient(n); }

SV vol_symmetric_space(int n) { return vol_quotient(n) / vol_so(n); }

int harder_tau(int n) {
  require(n >= 2, "tau needs n >= 2");
  return n % 2 == 1 ? n : n - 1;
}

SV harder_volume(int n) {
  const long tau = harder_tau(n);
  const SV two_pi = SV::integer(2) * pi(1);
  return factorial_product(n - 1, 1) * zeta_product(n, 1) /
         (two_pi.pow(q(long(n) * (n + 3), 2)) * two(tau) * SV::factorial(n));
}

SV normalization_ratio(int n) { return harder_volume(n) / vol_symmetric_space(n); }

namespace displayed {

SV vol_quotient(int n) {
  require(n >= 2, "vol_quotient needs n >= 2");
  SV den = two(q(long(n) * n - 3L * n + 1, 2));
  for (int i = 2; i <= n; ++i) den *= SV::factorial(i);
  return zeta_product(n, 1) / den;
}

SV vol_siegel_minimal(int n) {
  require(n >= 2, "vol_siegel needs n >= 2");
  const long n3 = long(n) * n * n, n2 = long(n) * n;
  return two(q(2 * n3 + 3 * n2 + 7L * n - 24, 12)) * pi(q(n2 + n - 2, 2)) /
         (three(q(n3 - n, 12)) * SV::factorial(n - 1, 2) * gamma_product(n, 1));
}

SV ratio_C(int n) {
  require(n >= 2, "ratio_C needs n >= 2");
  const long n3 = long(n) * n * n, n2 = long(n) * n;
  return two(q(2 * n3 + 9 * n2 + 25L * n - 30, 12)) * pi(q(n2 + n - 2, 4)) *
         factorial_product(n - 1, 1) /
         (three(q(n3 - n, 12)) * SV::factorial(n - 1, 2) * gamma_product(n, 1) *
          zeta_product(n, 1));
}

SV normalization_ratio(int n) {
  const long tau = harder_tau(n);
  const long n2 = long(n) * n;
  return two(q(n2 - 5L * n - 2, 4) - tau) * factorial_product(n - 1, 2) /
         (SV::factorial(n) * pi(q(n2 + 5L * n + 2, 4)) * gamma_product(n, 1));
}

}  // namespace displayed

FormulaCheck check_formula(std::string formula, int n, const SV& structural,
                           const SV& displayed) {
  FormulaCheck c;
  c.formula = std::move(formula);
  c.n = n;
  c.structural = structural;
  c.displayed = displayed;
  c.exact_match = structural == displayed;
  c.rel_diff = std::abs(std::expm1(displayed.log_value() - structural.log_value()));
  c.discrepancy = (displayed / structural).canonical().to_string();
  return c;
}

std::vector<FormulaCheck> displayed_formula_checks(int n_lo, int n_hi) {
  require(2 <= n_lo && n_lo <= n_hi, "invalid n range");
  std::vector<FormulaCheck> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    out.push_back(check_formula("vol_quotient", n, vol_quotient(n), displayed::vol_quotient(n)));
    out.push_back(check_formula("vol_siegel_minimal", n, vol_siegel(n, SiegelParams::minimal()),
                                displayed::vol_siegel_minimal(n)));
    out.push_back(check_formula("ratio_C", n, ratio_C(n), displayed::ratio_C(n)));
    out.push_back(check_formula("normalization_ratio", n, normalization_ratio(n),
                                displayed::normalization_ratio(n)));
  }
  return out;
}

GrowthRow growth_row(int n) {
  require(n >= 2, "growth row needs n >= 2");
  const SV siegel = vol_siegel(n, SiegelParams::minimal());
  const SV quotient = vol_quotient(n);
  return {n, siegel.log_value(), quotient.log_value(), (siegel / quotient).log_value(),
          log_height_bound(n)};
}

std::vector<GrowthRow> growth_table(int n_max) {
  if (n_max < 2 || n_max > 2000)
    throw Error(ErrorKind::InvalidRange, "growth_table needs 2 <= n_max <= 2000");
  std::vector<GrowthRow> rows;
  for (int n = 2; n <= n_max; ++n) rows.push_back(growth_row(n));
  return rows;
}

}  // namespace siegel
