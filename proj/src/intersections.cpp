#include "siegel/intersections.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "siegel/bounds.hpp"
#include "siegel/error.hpp"
#include "siegel/volumes.hpp"

namespace siegel {

mpz_class height(const IntMatrix& gamma) { return gamma.max_abs(); }
mpz_class height(const UnimodularIntMatrix& gamma) { return gamma.matrix().max_abs(); }

std::vector<std::pair<int, int>> leading_entries(const IntMatrix& gamma) {
  const int n = gamma.size();
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    int j = 0;
    while (j < n && gamma(i, j) == 0) ++j;
    if (j == n) throw Error(ErrorKind::NonInvertible, "matrix has a zero row");
    out.emplace_back(i, j);
  }
  return out;
}

int PartitionAnalysis::component_of(int i) const {
  for (std::size_t c = 0; c < components.size(); ++c)
    if (components[c].first <= i && i <= components[c].second) return static_cast<int>(c);
  throw Error(ErrorKind::InvalidArgument, "index outside the partition");
}

PartitionAnalysis finest_partition(const IntMatrix& gamma) {
  const int n = gamma.size();
  PartitionAnalysis out{gamma, leading_entries(gamma), {}};
  int start = 0;
  for (int k = 0; k < n - 1; ++k) {
    bool cut = true;
    for (int i = k + 1; i < n && cut; ++i)
      for (int j = 0; j <= k && cut; ++j) cut = gamma(i, j) == 0;
    if (cut) {
      out.components.emplace_back(start, k);
      start = k + 1;
    }
  }
  out.components.emplace_back(start, n - 1);
  return out;
}

std::vector<std::vector<bool>> index_reachability(const IntMatrix& gamma) {
  const int n = gamma.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) reach[p][q] = true;
  for (auto [i, j] : leading_entries(gamma)) reach[i][j] = true;
  for (int m = 0; m < n; ++m)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (reach[p][m] && reach[m][q]) reach[p][q] = true;
  return reach;
}

bool partition_matches_reachability(const IntMatrix& gamma) {
  const auto part = finest_partition(gamma);
  const auto reach = index_reachability(gamma);
  const int n = gamma.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool same = part.component_of(i) == part.component_of(j);
      if (same != (reach[i][j] && reach[j][i])) return false;
    }
  return true;
}

int FilterTrace::violations() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const FilterCheck& c) { return !c.passed; }));
}

FilterTrace lemma_filter_chain(const UnimodularIntMatrix& gamma, const RowFactors& s,
                               const RowFactors& gamma_s, const SiegelParams& p,
                               double member_tol, double slack) {
  const int n = gamma.size();
  if (s.size() != n || gamma_s.size() != n)
    throw Error(ErrorKind::InvalidArgument, "witness dimension mismatch");
  if (row_siegel_membership(s, p, member_tol) == Membership::outside ||
      row_siegel_membership(gamma_s, p, member_tol) == Membership::outside)
    throw Error(ErrorKind::InvalidWitness, "s or gamma s lies outside the Siegel set");
  const SquareMatrix lhs = gamma.to_real() * recompose(s);
  const SquareMatrix rhs = recompose(gamma_s);
  if (max_abs_diff(lhs, rhs) > 1e-8 * std::max(1.0, lhs.max_abs()))
    throw Error(ErrorKind::InvalidWitness, "gamma_s does not factor gamma * s");

  const auto& alpha = s.beta;
  const auto& beta = gamma_s.beta;
  // gamma = nu beta kappa alpha^{-1} mu^{-1} once the K-part of s is absorbed into kappa.
  const SquareMatrix kappa = gamma_s.kappa * s.kappa.transpose();
  const PartitionAnalysis part = finest_partition(gamma.matrix());
  const double rn = std::sqrt(double(n));
  const double c1 = std::pow(rn, double(n) * n - 1);

  FilterTrace trace;
  auto add = [&](const char* name, int i, int j, double l, double r) {
    trace.checks.push_back({name, i, j, l, r, l <= r * (1.0 + slack) + slack});
  };
  for (auto [i, j] : part.leading_entries) add("leading_entry", i, j, alpha[j], rn * beta[i]);
  for (int k = 0; k < n; ++k) add("diagonal", k, k, alpha[k], rn * beta[k]);
  for (int j = 0; j < n; ++j) add("reverse", j, j, beta[j], std::pow(rn, n - 1) * alpha[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (part.component_of(i) != part.component_of(j)) {
        add("kappa_block", i, j, std::abs(kappa(i, j)), 0.0);
        continue;
      }
      add("component", i, j, beta[j], c1 * alpha[i]);
      add("entry", i, j, beta[i] * std::abs(kappa(i, j)) / alpha[j], c1);
    }
  const double h = height(gamma).get_d();
  add("height", 0, 0, h, c1);
  return trace;
}

std::string_view to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::witnessed: return "witnessed";
    case WitnessStatus::excluded: return "excluded";
    case WitnessStatus::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Witness> WitnessCache::find(const UnimodularIntMatrix& gamma) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(to_string(gamma.matrix()));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void WitnessCache::store(const UnimodularIntMatrix& gamma, const Witness& w) {
  std::lock_guard lock(mu_);
  entries_.emplace(to_string(gamma.matrix()), w);
}

std::size_t WitnessCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

double witness_excess(const std::vector<double>& b, const SquareMatrix& u,
                      const SquareMatrix& gamma_at, const SiegelParams& p,
                      const Tolerances& tol) {
  const double own = siegel_excess(b, u, p);
  const auto a = diagonal_from_ratios(b);
  SquareMatrix s = u;
  const int n = u.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) *= a[i];
  try {
    const IwasawaFactors f = decompose(s * gamma_at, tol);
    return std::max(own, siegel_excess(f.b, f.u, p));
  } catch (const Error&) {
    return INFINITY;
  }
}

namespace {

// Search coordinates: log b_i followed by the strictly-upper u entries, row by row.
struct SearchSpace {
  int n;
  SiegelParams p;
  SquareMatrix gamma_at;
  std::vector<double> lo, hi;

  SearchSpace(int n_, const SiegelParams& p_, SquareMatrix gat)
      : n(n_), p(p_), gamma_at(std::move(gat)) {
    for (int i = 0; i + 1 < n; ++i) {
      lo.push_back(std::log(p.t) - std::log(1e3));
      hi.push_back(std::log(p.t));
    }
    for (int k = 0; k < n * (n - 1) / 2; ++k) {
      lo.push_back(-p.lambda);
      hi.push_back(p.lambda);
    }
  }

  std::size_t dim() const { return lo.size(); }

  void split(const std::vector<double>& x, std::vector<double>& b, SquareMatrix& u) const {
    b.assign(n - 1, 0.0);
    for (int i = 0; i + 1 < n; ++i) b[i] = std::exp(x[i]);
    u = unit_upper(n, std::span<const double>(x).subspan(n - 1));
  }

  double objective(const std::vector<double>& x) const {
    std::vector<double> b;
    SquareMatrix u;
    split(x, b, u);
    return witness_excess(b, u, gamma_at, p);
  }
};

// Pattern search: per coordinate try +-step and both box ends, keep the best improvement,
// halve the step when a sweep changes nothing. Deterministic, no randomness consumed.
double refine(const SearchSpace& space, std::vector<double>& x, double f, double target,
              int max_sweeps) {
  double step = 0.1;
  for (int sweep = 0; sweep < max_sweeps && f > target && step > 1e-13; ++sweep) {
    bool improved = false;
    for (std::size_t c = 0; c < space.dim(); ++c) {
      const double orig = x[c];
      const std::array<double, 4> tries = {
          std::min(space.hi[c], orig + step), std::max(space.lo[c], orig - step),
          space.lo[c], space.hi[c]};
      double best_v = orig, best_f = f;
      for (double v : tries) {
        if (v == orig) continue;
        x[c] = v;
        const double fv = space.objective(x);
        if (fv < best_f) {
          best_f = fv;
          best_v = v;
        }
      }
      x[c] = best_v;
      if (best_f < f) {
        f = best_f;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return f;
}

bool minimal_or_smaller(const SiegelParams& p) {
  const SiegelParams m = SiegelParams::minimal();
  return p.t <= m.t * (1.0 + 1e-15) && p.lambda <= m.lambda;
}

Witness make_witness(const SearchSpace& space, const std::vector<double>& x, double f,
                     const SquareMatrix& gamma_real) {
  Witness w;
  space.split(x, w.point.b, w.point.u);
  w.point.k = SquareMatrix::identity(space.n);
  w.point.weight = siegel_density(w.point.b);
  w.s = antitranspose(w.point.to_matrix());
  w.gamma_s = gamma_real * w.s;
  w.excess = f;
  return w;
}

}  // namespace

IntersectionReport find_witness(const UnimodularIntMatrix& gamma, const SiegelParams& p,
                                const WitnessSearchConfig& cfg, RngStream& rng,
                                WitnessCache* cache) {
  p.validate();
  const int n = gamma.size();
  IntersectionReport report{gamma, WitnessStatus::unknown, std::nullopt, {}, 0, {}};
  const SquareMatrix gamma_real = gamma.to_real();
  auto finish_witnessed = [&](const Witness& w, const char* reason) {
    report.status = WitnessStatus::witnessed;
    report.witness = w;
    report.reason = reason;
    report.filter_trace =
        lemma_filter_chain(gamma, decompose_rows(w.s), decompose_rows(w.gamma_s), p,
                           cfg.verify_tol);
    return report;
  };

  if (cache) {
    if (auto w = cache->find(gamma)) return finish_witnessed(*w, "cached witness");
  }
  if (minimal_or_smaller(p) && height(gamma).get_d() > height_bound(n)) {
    report.status = WitnessStatus::excluded;
    report.reason = "height exceeds the height bound";
    return report;
  }

  const SearchSpace space(n, p, antitranspose(gamma.matrix()).to_real());
  const double log_t = std::log(p.t);
  const double log_top = log_t - 0.5 * std::log(2.0);
  const double log_bottom = log_t + std::log(cfg.b_min_ratio);
  std::vector<double> x(space.dim());
  for (std::uint64_t sample = 0; sample < cfg.budget; ++sample) {
    // Alternate between the top band [t/sqrt(2), t] and the full proposal range.
    const double lb = sample % 2 == 0 ? log_top : log_bottom;
    for (int i = 0; i + 1 < n; ++i) x[i] = rng.uniform(lb, log_t);
    for (std::size_t c = n - 1; c < space.dim(); ++c) x[c] = rng.uniform(-p.lambda, p.lambda);
    // The first point is the identity itself, which settles signed permutations at once.
    if (sample == 0) std::fill(x.begin(), x.end(), 0.0);
    double f = space.objective(x);
    if (f > cfg.near_hit) continue;
    f = refine(space, x, f, 0.0, 400);
    if (f > cfg.accept_tol) continue;
    if (f > cfg.verify_tol) f = refine(space, x, f, 0.0, 4000);
    if (f > cfg.verify_tol) continue;
    report.samples_used = sample + 1;
    const Witness w = make_witness(space, x, f, gamma_real);
    if (cache) cache->store(gamma, w);
    return finish_witnessed(w, "sampled and refined");
  }
  report.samples_used = cfg.budget;
  report.reason = "no witness within budget";
  return report;
}

std::vector<IntMatrix> enumerate_candidates(int n, long height_cap) {
  if (n > 3) throw Error(ErrorKind::DimensionTooLarge, "enumeration supports n <= 3");
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "enumeration needs n >= 2");
  if (height_cap < 0) throw Error(ErrorKind::InvalidArgument, "height cap must be >= 0");
  const long h = height_cap;
  std::vector<std::vector<long>> rows;
  std::vector<long> row(n);
  // All integer rows in [-h, h]^n, lexicographic.
  auto fill = [&](auto&& self, int c) -> void {
    if (c == n) {
      rows.push_back(row);
      return;
    }
    for (long v = -h; v <= h; ++v) {
      row[c] = v;
      self(self, c + 1);
    }
  };
  fill(fill, 0);
  auto gcd_of = [](const std::vector<long>& r) {
    long g = 0;
    for (long v : r) g = std::gcd(g, v);
    return g;
  };
  std::vector<std::vector<long>> primitive;
  for (const auto& r : rows)
    if (gcd_of(r) == 1) primitive.push_back(r);

  auto build = [&](std::initializer_list<const std::vector<long>*> rs) {
    std::vector<std::vector<long>> m;
    for (auto* r : rs) m.push_back(*r);
    return IntMatrix::from_rows(m);
  };
  std::vector<IntMatrix> out;
  if (n == 2) {
    for (const auto& r1 : primitive)
      for (const auto& r2 : primitive)
        if (r1[0] * r2[1] - r1[1] * r2[0] == 1) out.push_back(build({&r1, &r2}));
  } else {
    for (const auto& r1 : primitive)
      for (const auto& r2 : primitive) {
        // det = r3 . (r1 x r2), solvable only when the cross product is primitive.
        const std::vector<long> cross = {r1[1] * r2[2] - r1[2] * r2[1],
                                         r1[2] * r2[0] - r1[0] * r2[2],
                                         r1[0] * r2[1] - r1[1] * r2[0]};
        if (gcd_of(cross) != 1) continue;
        for (const auto& r3 : primitive)
          if (r3[0] * cross[0] + r3[1] * cross[1] + r3[2] * cross[2] == 1)
            out.push_back(build({&r1, &r2, &r3}));
      }
  }
  for (const auto& m : out)
    if (m.determinant() != 1) throw Error(ErrorKind::NotUnimodular, "enumeration fault");
  return out;
}

std::uint64_t brute_force_sl2_count(long h) {
  std::uint64_t count = 0;
  for (long a = -h; a <= h; ++a)
    for (long b = -h; b <= h; ++b)
      for (long c = -h; c <= h; ++c)
        for (long d = -h; d <= h; ++d)
          if (a * d - b * c == 1) ++count;
  return count;
}

long default_height_cap(int n) {
  if (n == 2) return static_cast<long>(std::floor(height_bound(2)));
  if (n == 3) return 2;
  throw Error(ErrorKind::DimensionTooLarge, "enumeration supports n <= 3");
}

EnumerationResult enumerate_intersections(int n, const SiegelParams& p,
                                          const WitnessSearchConfig& cfg, std::uint64_t seed,
                                          long height_cap, int threads, WitnessCache* cache) {
  if (n > 3) throw Error(ErrorKind::DimensionTooLarge, "enumeration supports n <= 3");
  p.validate();
  if (height_cap < 0) height_cap = default_height_cap(n);
  const auto candidates = enumerate_candidates(n, height_cap);
  const long count = static_cast<long>(candidates.size());
  std::vector<IntersectionReport> reports(candidates.size(),
                                          IntersectionReport{UnimodularIntMatrix::identity(n), WitnessStatus::unknown,
                                                             std::nullopt, {}, 0, {}});
  bool failed = false;
  std::string failure;
  auto run = [&](long i) {
    try {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      reports[i] = find_witness(UnimodularIntMatrix(candidates[i]), p, cfg, rng, cache);
    } catch (const std::exception& e) {
#pragma omp critical(siegel_enumeration_failure)
      {
        failed = true;
        failure = e.what();
      }
    }
  };
  if (threads <= 1) {
    for (long i = 0; i < count; ++i) run(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < count; ++i) run(i);
  }
  if (failed) throw Error(ErrorKind::InvalidWitness, "candidate search failed: " + failure);

  EnumerationSummary s;
  s.n = n;
  s.height_cap = height_cap;
  s.height_bound = height_bound(n);
  s.candidates = candidates.size();
  for (const auto& r : reports) {
    if (r.status == WitnessStatus::witnessed) ++s.witnessed;
    if (r.status == WitnessStatus::excluded) ++s.excluded;
    if (r.status == WitnessStatus::unknown) ++s.unknown;
    s.chain_violations += static_cast<std::uint64_t>(r.filter_trace.violations());
  }
  s.lower_bound = static_cast<long>(std::ceil(ratio_C(n).value()));
  s.upper_log_count = (double(n) * n - n) * (std::log(double(n)) + log_height_bound(n));
  s.lower_bound_met = s.witnessed >= static_cast<std::uint64_t>(s.lower_bound);
  s.seed = seed;
  s.budget = cfg.budget;
  return {std::move(reports), s};
}

CountBounds count_bounds(int n) {
  return {ratio_C(n).log_value(),
          (double(n) * n - n) * (std::log(double(n)) + log_height_bound(n))};
}

std::vector<IntMatrix> signed_permutation_matrices(int n) {
  if (n < 2 || n > 6) throw Error(ErrorKind::InvalidArgument, "signed permutations need 2..6");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IntMatrix> out;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      IntMatrix m(n);
      for (int i = 0; i < n; ++i) m(i, perm[i]) = (mask >> i) & 1u ? -1 : 1;
      if (m.determinant() == 1) out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::uint64_t signed_permutation_count(int n) {
  // A 1x1 signed permutation is [+-1]; only [1] has determinant +1.
  if (n == 1) return 1;
  return signed_permutation_matrices(n).size();
}

}  // namespace siegel
