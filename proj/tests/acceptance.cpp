// Acceptance run: one PASS/FAIL line per criterion, followed by indented info lines.
// Exit status is 0 when every failure is one of the documented unattainable criteria.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "siegel/bounds.hpp"
#include "siegel/haar.hpp"
#include "siegel/intersections.hpp"
#include "siegel/kernels.hpp"
#include "siegel/special.hpp"
#include "siegel/volumes.hpp"

using namespace siegel;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double got, double want) { return std::abs(got / want - 1.0); }

Outcome criterion1() {
  Outcome o;
  double worst = 0.0;
  std::uint64_t failures = 0;
  for (int n = 2; n <= 8; ++n) {
    const auto s = roundtrip_corpus_serial(n, 10000, 1000 + n);
    worst = std::max(worst, s.max_recon_err);
    failures += s.failures;
  }
  o.pass = worst <= 1e-10 && failures == 0;
  o.detail = fmt("max recon err %.3e over 7 x 10^4 matrices, %llu failures", worst,
                 static_cast<unsigned long long>(failures));
  return o;
}

Outcome criterion2() {
  Outcome o;
  int mismatches = 0;
  for (int n = 1; n <= 20; ++n) mismatches += !(vol_so(n) == vol_so_recursive(n));
  const double want2 = std::pow(2.0, 1.5) * kPi, want3 = std::pow(2.0, 4.5) * kPi * kPi;
  const double e2 = rel(vol_so(2).value(), want2), e3 = rel(vol_so(3).value(), want3);
  o.pass = mismatches == 0 && e2 <= 1e-12 && e3 <= 1e-12;
  o.detail = fmt("closed form == recursion for n=1..20 (%d mismatches); vol(SO_2) = %.10f rel %.1e, "
                 "vol(SO_3) = %.10f rel %.1e",
                 mismatches, vol_so(2).value(), e2, vol_so(3).value(), e3);
  o.info.push_back(fmt("2^(9/2) pi^2 = %.7f; the quoted decimal 223.3427 is off by %.2e relative",
                       want3, rel(223.3427, want3)));
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n)
    for (double t : {1.0, 2.0 / std::sqrt(3.0), 2.0}) {
      // Oracle written out here rather than taken from the library.
      const double fact = std::tgamma(static_cast<double>(n));
      const double closed = 0.5 * std::pow(t, n * (n * n - 1) / 6.0) / (fact * fact);
      worst = std::max(worst, rel(a_integral_quadrature(n, t), closed));
    }
  const SiegelParams p = SiegelParams::minimal();
  const double b_min = p.t / 16;
  const auto mc = siegel_density_mc_serial(3, p, b_min, 1000000, 3);
  const double exact = std::pow((p.t * p.t - b_min * b_min) / 2.0, 2);
  const double z = (mc.estimate - exact) / mc.std_error;
  o.pass = worst <= 1e-10 && std::abs(z) <= 3.0;
  o.detail = fmt("quadrature max rel err %.2e (12 cases); MC n=3 %.6f vs %.6f, z = %+.2f", worst,
                 mc.estimate, exact, z);
  o.info.push_back(fmt("MC covers [t/16, t]^2; the cut (0, t/16) holds relative mass %.2e",
                       1.0 - exact / (2.0 * a_integral_closed_form(3, p.t))));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const double want = std::sqrt(2.0) * kPi * kPi / 6.0;
  const double got = vol_quotient(2).value();
  const auto check = check_formula("vol_quotient", 2, vol_quotient(2), displayed::vol_quotient(2));
  const bool factor_is_nfact = check.displayed == check.structural / SymbolicVolume::factorial(2);
  const double disp_want = kPi * kPi / 6.0 / std::sqrt(2.0);
  o.pass = std::abs(got - want) <= 1e-12 && !check.agrees() && factor_is_nfact &&
           rel(check.displayed.value(), disp_want) <= 1e-12;
  o.detail = fmt("vol_quotient(2) = %.10f (abs err %.1e); displayed form gives %.10f = zeta(2)/sqrt(2), "
                 "ratio %s",
                 got, std::abs(got - want), check.displayed.value(), check.discrepancy.c_str());
  int n_fact = 0;
  for (int n = 2; n <= 20; ++n)
    n_fact += displayed::vol_quotient(n) == vol_quotient(n) / SymbolicVolume::factorial(n);
  o.info.push_back(fmt("displayed/structural = 1/n! for %d of 19 n in 2..20", n_fact));
  o.info.push_back(fmt("sqrt(2) zeta(2) = %.9f; the quoted decimal 2.3262915 is off by %.2e", want,
                       std::abs(2.3262915 - want)));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::uint64_t want[] = {1, 4, 24, 192};
  std::string got;
  for (int n = 1; n <= 4; ++n) {
    const std::uint64_t c = signed_permutation_count(n);
    o.pass = o.pass && c == want[n - 1] && mpz_class(c) == signed_perm_order(n);
    got += (n > 1 ? ", " : "") + std::to_string(c);
  }
  o.detail = "enumerated counts " + got;
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::string parts;
  for (int n = 2; n <= 5; ++n) {
    const auto s = reduction_corpus_serial(n, 10000, 6000 + n);
    o.pass = o.pass && s.reduced == s.samples && s.max_excess <= 1e-9;
    parts += fmt("%sn=%d %llu/%llu (max iter %d, max excess %.1e)", n > 2 ? "; " : "", n,
                 static_cast<unsigned long long>(s.reduced),
                 static_cast<unsigned long long>(s.samples), s.max_iterations, s.max_excess);
  }
  o.detail = parts;
  return o;
}

Outcome criterion7() {
  Outcome o;
  WitnessSearchConfig cfg;
  const auto res = enumerate_intersections(2, SiegelParams::minimal(), cfg, 7);
  const auto& s = res.summary;
  std::set<std::string> hit;
  for (const auto& r : res.reports)
    if (r.status == WitnessStatus::witnessed) hit.insert(to_string(r.gamma.matrix()));
  bool required = true;
  for (const char* g : {"[[1,0],[0,1]]", "[[-1,0],[0,-1]]", "[[1,1],[0,1]]", "[[1,-1],[0,1]]"})
    required = required && hit.count(g);
  const std::uint64_t brute = brute_force_sl2_count(2);
  o.pass = s.candidates == brute && s.witnessed >= 3 && required && s.chain_violations == 0;
  o.detail = fmt("%llu candidates (brute force %llu); %llu witnessed >= %ld; +-I and shears %s; "
                 "%llu chain violations",
                 static_cast<unsigned long long>(s.candidates),
                 static_cast<unsigned long long>(brute),
                 static_cast<unsigned long long>(s.witnessed), s.lower_bound,
                 required ? "present" : "MISSING",
                 static_cast<unsigned long long>(s.chain_violations));
  o.info.push_back(fmt("n=2 statuses: %llu witnessed, %llu excluded, %llu unknown",
                       static_cast<unsigned long long>(s.witnessed),
                       static_cast<unsigned long long>(s.excluded),
                       static_cast<unsigned long long>(s.unknown)));
  const auto r3 = enumerate_intersections(3, SiegelParams::minimal(), cfg, 7, 1);
  o.info.push_back(fmt("n=3, height <= 1: %llu candidates, %llu witnessed (>= %ld), %llu chain "
                       "violations",
                       static_cast<unsigned long long>(r3.summary.candidates),
                       static_cast<unsigned long long>(r3.summary.witnessed),
                       r3.summary.lower_bound,
                       static_cast<unsigned long long>(r3.summary.chain_violations)));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto rows = growth_table(1000);
  bool quotient_dec = true, quotient_neg = true, c_pos = true, c_inc = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    c_pos = c_pos && r.log_C > 0;
    if (r.n >= 3) quotient_neg = quotient_neg && r.log_vol_quotient < 0;
    if (r.n >= 4) {
      quotient_dec = quotient_dec && r.log_vol_quotient < rows[i - 1].log_vol_quotient;
      c_inc = c_inc && r.log_C > rows[i - 1].log_C;
    }
  }
  bool bounds_ok = true;
  for (int n = 2; n <= 100; ++n) bounds_ok = bounds_ok && count_bounds(n).log_lower < count_bounds(n).log_upper;
  const double target = std::log(2.0) / 6 - std::log(3.0) / 12;
  const double ratio = rows.back().log_C / 1e9;
  const double dev = rel(ratio, target);
  o.pass = quotient_dec && quotient_neg && c_pos && c_inc && bounds_ok && dev <= 0.06;
  o.detail = fmt("monotonicity %s, signs %s, count bounds %s; log_C(1000)/1000^3 = %.7f vs %.7f "
                 "(%.2f%% off, bound 6%%)",
                 quotient_dec && c_inc ? "ok" : "BROKEN", quotient_neg && c_pos ? "ok" : "BROKEN",
                 bounds_ok ? "ok" : "BROKEN", ratio, target, 100 * dev);
  for (int n : {1500, 2000}) {
    const double r = growth_row(n).log_C / std::pow(n, 3.0);
    o.info.push_back(fmt("n=%d: log_C/n^3 = %.7f (%.2f%% off)", n, r, 100 * rel(r, target)));
  }
  const double sub = (rows.back().log_C - target * 1e9) / 1e6;
  o.info.push_back(fmt("log_C - c n^3 = %.4f n^2 at n=1000, ~ (ln n)/4 + 0.59: the relative gap "
                       "decays only like log(n)/n and drops below 6%% near n = 1900",
                       sub));
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (int n = 2; n <= 20; ++n)
    o.pass = o.pass && vol_symmetric_space(n) * vol_so(n) == vol_quotient(n);
  int mismatches = 0;
  std::string factors;
  for (int n = 2; n <= 10; ++n) {
    const auto c = check_formula("normalization_ratio", n, harder_volume(n) / vol_symmetric_space(n),
                                 displayed::normalization_ratio(n));
    if (!c.agrees()) {
      ++mismatches;
      if (n <= 3) factors += (factors.empty() ? "" : ", ") + fmt("n=%d: %s", n, c.discrepancy.c_str());
    }
  }
  o.detail = fmt("symmetric * SO == quotient exactly for n=2..20; displayed normalization ratio "
                 "differs for %d of 9 n (reported, not failed)",
                 mismatches);
  o.info.push_back("displayed/direct = 2^n (" + factors + ")");
  return o;
}

Outcome criterion10() {
  Outcome o;
  RngStream rng(10, 0);
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> b(n - 1);
      for (double& x : b) x = std::exp(rng.uniform(-2.0, 2.0));
      const auto a = diagonal_from_ratios(b);
      const int m = n * (n - 1) / 2;
      Eigen::MatrixXd jac(m, m);
      for (int c = 0; c < m; ++c) {
        std::vector<double> e(m, 0.0);
        e[c] = 1.0;
        SquareMatrix x = unit_upper(n, e);
        for (int i = 0; i < n; ++i) x(i, i) = 0.0;
        SquareMatrix y(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) y(i, j) = a[i] * x(i, j) / a[j];
        const auto img = strict_upper(y);
        for (int r = 0; r < m; ++r) jac(r, c) = img[r];
      }
      worst = std::max(worst, rel(conjugation_jacobian(a), jac.determinant()));
    }
  o.pass = worst <= 1e-9;
  o.detail = fmt("max rel err %.2e over 300 diagonals", worst);
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    std::function<Outcome()> run;
    bool known_unattainable;
  };
  const std::vector<Entry> entries{
      {1, criterion1, false}, {2, criterion2, false}, {3, criterion3, false},
      {4, criterion4, false}, {5, criterion5, false}, {6, criterion6, false},
      {7, criterion7, false}, {8, criterion8, true},  {9, criterion9, false},
      {10, criterion10, false}};
  const double limits[] = {30, 1e9, 120, 1e9, 5, 120, 300, 10, 1e9, 1e9};

  int unexpected = 0, known = 0;
  for (const auto& e : entries) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = e.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limits[e.id - 1]) {
      o.pass = false;
      o.detail += fmt(" [runtime limit %.0f s exceeded]", limits[e.id - 1]);
    }
    std::printf("[%s] criterion %d: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", e.id,
                o.detail.c_str(), secs);
    for (const auto& line : o.info) std::printf("       info: %s\n", line.c_str());
    std::fflush(stdout);
    if (!o.pass) (e.known_unattainable ? known : unexpected) += 1;
  }
  std::printf("summary: %d unexpected failure(s), %d known-unattainable failure(s)\n", unexpected,
              known);
  return unexpected == 0 ? 0 : 1;
}
