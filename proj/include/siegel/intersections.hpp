#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "siegel/haar.hpp"
#include "siegel/iwasawa.hpp"
#include "siegel/matrix.hpp"
#include "siegel/rng.hpp"

namespace siegel {

// Conventions. Translates are taken under LEFT multiplication, gamma * Sigma, with
// Sigma^row = antitranspose(Sigma_{t,lambda}) = N_lambda A K: elements nu * diag(beta) * kappa
// with |nu_ij| <= lambda and beta_{i+1} / beta_i <= t. Under antitranspose, gamma s lies in
// Sigma^row iff s' * antitranspose(gamma) lies in Sigma_{t,lambda} for s' = antitranspose(s),
// so witnesses are searched in the ordinary (b, u) coordinates with right multiplication.
// Indices below are 0-based.

mpz_class height(const UnimodularIntMatrix& gamma);
mpz_class height(const IntMatrix& gamma);

/// (row, col) of the leftmost nonzero entry of each row.
std::vector<std::pair<int, int>> leading_entries(const IntMatrix& gamma);

struct PartitionAnalysis {
  IntMatrix gamma;
  std::vector<std::pair<int, int>> leading_entries;
  /// Inclusive index intervals [first, last], in increasing order.
  std::vector<std::pair<int, int>> components;

  /// Index of the component holding i.
  int component_of(int i) const;
};

/// Finest interval partition with gamma block upper triangular: a cut after index k is
/// allowed iff gamma_ij = 0 for all i > k >= j.
PartitionAnalysis finest_partition(const IntMatrix& gamma);

/// reach[i][j]: j can be reached from i by steps p -> q with p <= q or (p, q) a leading entry.
std::vector<std::vector<bool>> index_reachability(const IntMatrix& gamma);

/// Same component iff mutually reachable; returns false on any disagreement.
bool partition_matches_reachability(const IntMatrix& gamma);

struct FilterCheck {
  std::string name;
  int i = 0;
  int j = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = true;
};

struct FilterTrace {
  std::vector<FilterCheck> checks;
  int violations() const;
  bool all_passed() const { return violations() == 0; }
};

/// The inequality chain linking alpha (A-factor of s) and beta (A-factor of gamma s), both in
/// the N A K convention, for a verified witness s:
///   leading_entry:   alpha_j <= sqrt(n) beta_i for each leading entry (i, j)
///   diagonal:        alpha_k <= sqrt(n) beta_k
///   reverse:         beta_j <= sqrt(n)^{n-1} alpha_j
///   component:       beta_j <= sqrt(n)^{n^2-1} alpha_i for i, j in one component
///   kappa_block:     |kappa_pq| <= slack across components
///   entry:           beta_p |kappa_pq| / alpha_q <= sqrt(n)^{n^2-1}
///   height:          |gamma_ij| <= sqrt(n)^{n^2-1}
/// Every inequality is tested with multiplicative slack (1 + slack). Throws InvalidWitness
/// unless s and gamma s are both in Sigma^row within member_tol.
FilterTrace lemma_filter_chain(const UnimodularIntMatrix& gamma, const RowFactors& s,
                               const RowFactors& gamma_s, const SiegelParams& p,
                               double member_tol = 1e-9, double slack = 1e-9);

enum class WitnessStatus { witnessed, excluded, unknown };
std::string_view to_string(WitnessStatus s);

struct Witness {
  /// Column-convention coordinates (k = I) of s' with s = antitranspose(s').
  SiegelCoordinatePoint point;
  /// s in Sigma^row and gamma * s in Sigma^row.
  SquareMatrix s;
  SquareMatrix gamma_s;
  /// max of the two membership excesses; <= 0 means both in the closed set.
  double excess = 0.0;
};

struct WitnessSearchConfig {
  std::uint64_t budget = 2000;
  /// Accept a refined point when both excesses are <= accept_tol...
  double accept_tol = 1e-7;
  /// ...and keep it only if extended refinement brings them <= verify_tol.
  double verify_tol = 1e-9;
  /// Start local refinement when a sample's excess is below this.
  double near_hit = 0.35;
  /// Lower end of the log-uniform b proposal, relative to t.
  double b_min_ratio = 1.0 / 16.0;
};

struct IntersectionReport {
  UnimodularIntMatrix gamma;
  WitnessStatus status = WitnessStatus::unknown;
  std::optional<Witness> witness;
  FilterTrace filter_trace;
  /// Samples consumed before the verdict (0 for cache hits and height exclusions).
  std::uint64_t samples_used = 0;
  std::string reason;
};

/// Witnesses found so far, keyed by gamma, so a larger budget can never lose one.
class WitnessCache {
 public:
  std::optional<Witness> find(const UnimodularIntMatrix& gamma) const;
  void store(const UnimodularIntMatrix& gamma, const Witness& w);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, Witness> entries_;
};

/// Membership excess of the pair (s', s' * antitranspose(gamma)) at the given coordinates.
double witness_excess(const std::vector<double>& b, const SquareMatrix& u,
                      const SquareMatrix& gamma_at, const SiegelParams& p,
                      const Tolerances& tol = kDefaultTolerances);

IntersectionReport find_witness(const UnimodularIntMatrix& gamma, const SiegelParams& p,
                                const WitnessSearchConfig& cfg, RngStream& rng,
                                WitnessCache* cache = nullptr);

/// All gamma in SL_n(Z) with height <= height_cap, in lexicographic row-major order. Rows are
/// built by backtracking with gcd pruning; determinants are checked exactly. n <= 3.
std::vector<IntMatrix> enumerate_candidates(int n, long height_cap);

/// Brute-force count of SL_n(Z) elements with all entries in [-h, h] (n = 2 only).
std::uint64_t brute_force_sl2_count(long h);

/// Default height cap: floor(height_bound(n)) for n = 2; 2 for n = 3, where the full bound 81
/// gives on the order of 10^11 candidates.
long default_height_cap(int n);

struct EnumerationSummary {
  int n = 0;
  long height_cap = 0;
  double height_bound = 0.0;
  std::uint64_t candidates = 0;
  std::uint64_t witnessed = 0;
  std::uint64_t excluded = 0;
  std::uint64_t unknown = 0;
  /// ceil(C(n)).
  long lower_bound = 0;
  /// (n^2 - n) log(n height_bound(n)).
  double upper_log_count = 0.0;
  std::uint64_t chain_violations = 0;
  bool lower_bound_met = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
};

struct EnumerationResult {
  std::vector<IntersectionReport> reports;
  EnumerationSummary summary;
};

/// Runs find_witness on every candidate, candidate i using RngStream(seed, i). threads > 1
/// parallelizes over candidates; the result does not depend on the thread count. height_cap
/// < 0 selects default_height_cap(n). Throws DimensionTooLarge for n > 3.
EnumerationResult enumerate_intersections(int n, const SiegelParams& p,
                                          const WitnessSearchConfig& cfg, std::uint64_t seed,
                                          long height_cap = -1, int threads = 1,
                                          WitnessCache* cache = nullptr);

struct CountBounds {
  double log_lower = 0.0;
  double log_upper = 0.0;
};

/// log C(n) and (n^2 - n)(log n + log height_bound(n)).
CountBounds count_bounds(int n);

/// Exhaustive list of signed permutation matrices with determinant +1 (2 <= n <= 6).
std::vector<IntMatrix> signed_permutation_matrices(int n);
/// Size of the list above, extended to n = 1.
std::uint64_t signed_permutation_count(int n);

}  // namespace siegel
