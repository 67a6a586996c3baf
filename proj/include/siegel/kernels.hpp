#pragma once

#include <cstdint>
#include <vector>

#include "siegel/haar.hpp"
#include "siegel/iwasawa.hpp"
#include "siegel/volumes.hpp"

// Corpus-scale drivers. Each comes as a plain serial loop, kept as the reference, and an
// OpenMP version. Randomness is keyed by sample (or chunk) index and partial results merge in
// index order, so both versions return bitwise-identical results for any thread count.

namespace siegel {

struct RoundTripStats {
  std::uint64_t samples = 0;
  double max_recon_err = 0.0;
  double max_ortho_defect = 0.0;
  /// max |det(k) - 1| and max |prod(a) - 1|.
  double max_det_err = 0.0;
  /// max relative error of a -> b -> a.
  double max_ratio_roundtrip_err = 0.0;
  std::uint64_t failures = 0;

  friend bool operator==(const RoundTripStats&, const RoundTripStats&) = default;
};

/// Decomposes `count` Gaussian det-1 matrices, sample i drawn from RngStream(seed, i).
RoundTripStats roundtrip_corpus_serial(int n, std::uint64_t count, std::uint64_t seed);
RoundTripStats roundtrip_corpus_parallel(int n, std::uint64_t count, std::uint64_t seed,
                                         int threads);

struct ReductionStats {
  std::uint64_t samples = 0;
  std::uint64_t reduced = 0;
  int max_iterations = 0;
  /// Largest Siegel-membership excess of a reduced sigma (<= 0 means inside or boundary).
  double max_excess = -1.0;
  double max_recon_err = 0.0;
  /// Exchanges that failed to lower the reduction potential.
  std::uint64_t potential_increases = 0;

  friend bool operator==(const ReductionStats&, const ReductionStats&) = default;
};

ReductionStats reduction_corpus_serial(int n, std::uint64_t count, std::uint64_t seed,
                                       int max_iter = -1);
ReductionStats reduction_corpus_parallel(int n, std::uint64_t count, std::uint64_t seed,
                                         int threads, int max_iter = -1);

inline constexpr std::uint64_t kMonteCarloChunk = 4096;

/// Importance-sampled estimate of the integral of siegel_density over [b_min, t]^(n-1) (no
/// factor 1/2), using sample_siegel_point. Chunk c of kMonteCarloChunk samples draws from
/// RngStream(seed, c); chunk sums are accumulated with compensated summation.
MonteCarloEstimate siegel_density_mc_serial(int n, const SiegelParams& p, double b_min,
                                            std::uint64_t samples, std::uint64_t seed);
MonteCarloEstimate siegel_density_mc_parallel(int n, const SiegelParams& p, double b_min,
                                              std::uint64_t samples, std::uint64_t seed,
                                              int threads);

std::vector<GrowthRow> growth_table_parallel(int n_max, int threads);

}  // namespace siegel
