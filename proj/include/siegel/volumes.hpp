#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "siegel/iwasawa.hpp"
#include "siegel/symbolic.hpp"

namespace siegel {

/// vol(S^m) = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
SymbolicVolume sphere_volume(int m);

/// 2^{(n-1)(n/4+1)} prod_{i=2}^n pi^{i/2} / Gamma(i/2); vol_so(1) = 1.
SymbolicVolume vol_so(int n);
/// The same volume built from the fibration recursion 2^{(n-1)/2} vol(S^{n-1}) vol(SO_{n-1}).
SymbolicVolume vol_so_recursive(int n);

/// #SO_n(Z) = 2^{n-1} n!.
mpz_class signed_perm_order(int n);

/// Exact representation of a Siegel parameter: 2/sqrt(3) and rationals with denominator up
/// to 1000 are recognized; anything else becomes a named numeric symbol.
SymbolicVolume parameter_value(double x, const std::string& name);

/// (1/2) vol(SO_n) (2 lambda)^{n(n-1)/2} t^{n(n^2-1)/6} / ((n-1)!)^2.
SymbolicVolume vol_siegel(int n, const SiegelParams& p);

/// sqrt(2) prod_{i=2}^n zeta(i) prod_{i=1}^{n-1} 1 / (2^{i-1} i!).
SymbolicVolume vol_quotient(int n);

/// vol_siegel(n, minimal) / vol_quotient(n).
SymbolicVolume ratio_C(int n);

/// vol_quotient(n) / vol_so(n): covolume on the symmetric space SL_n(R)/SO_n.
SymbolicVolume vol_symmetric_space(int n);

/// tau = n for odd n, n - 1 for even n.
int harder_tau(int n);
/// prod_{i=1}^{n-1} i! prod_{i=2}^n zeta(i) / ((2 pi)^{n(n+3)/2} 2^tau n!).
SymbolicVolume harder_volume(int n);
/// harder_volume(n) / vol_symmetric_space(n).
SymbolicVolume normalization_ratio(int n);

/// Simplified closed forms as they are commonly displayed. They are only used as
/// cross-checks against the structural expressions above.
namespace displayed {
/// prod_{i=2}^n zeta(i) / (2^{(n^2-3n+1)/2} prod_{i=2}^n i!).
SymbolicVolume vol_quotient(int n);
/// 2^{(2n^3+3n^2+7n-24)/12} pi^{(n^2+n-2)/2} / (3^{n(n^2-1)/12} ((n-1)!)^2 prod Gamma(i/2)).
SymbolicVolume vol_siegel_minimal(int n);
/// 2^{(2n^3+9n^2+25n-30)/12} pi^{(n^2+n-2)/4} prod_{i<n} i!
///   / (3^{(n^3-n)/12} ((n-1)!)^2 prod Gamma(i/2) prod zeta(i)).
SymbolicVolume ratio_C(int n);
/// 2^{(n^2-5n-2)/4 - tau} (prod_{i<n} i!)^2 / (n! pi^{(n^2+5n+2)/4} prod Gamma(i/2)).
SymbolicVolume normalization_ratio(int n);
}  // namespace displayed

/// Outcome of comparing a structural expression against a displayed simplification.
struct FormulaCheck {
  std::string formula;
  int n = 0;
  SymbolicVolume structural;
  SymbolicVolume displayed;
  bool exact_match = false;
  /// |displayed / structural - 1| from the log values.
  double rel_diff = 0.0;
  /// displayed / structural in the symbolic algebra, reduced to primes, pi and zeta.
  std::string discrepancy;
  bool agrees(double rel_tol = 1e-9) const { return exact_match || rel_diff <= rel_tol; }
};

FormulaCheck check_formula(std::string formula, int n, const SymbolicVolume& structural,
                           const SymbolicVolume& displayed);

/// All displayed-formula checks ("vol_quotient", "vol_siegel_minimal", "ratio_C",
/// "normalization_ratio") for n in [n_lo, n_hi].
std::vector<FormulaCheck> displayed_formula_checks(int n_lo, int n_hi);

struct GrowthRow {
  int n = 0;
  double log_vol_siegel = 0.0;
  double log_vol_quotient = 0.0;
  double log_C = 0.0;
  double log_height_bound = 0.0;
};

GrowthRow growth_row(int n);
/// Rows n = 2..n_max with 2 <= n_max <= 2000. Serial.
std::vector<GrowthRow> growth_table(int n_max);

}  // namespace siegel
