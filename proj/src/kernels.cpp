#include "siegel/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <optional>

#include "siegel/error.hpp"
#include "siegel/reduction.hpp"

namespace siegel {

namespace {

void merge(RoundTripStats& into, const RoundTripStats& s) {
  into.samples += s.samples;
  into.max_recon_err = std::max(into.max_recon_err, s.max_recon_err);
  into.max_ortho_defect = std::max(into.max_ortho_defect, s.max_ortho_defect);
  into.max_det_err = std::max(into.max_det_err, s.max_det_err);
  into.max_ratio_roundtrip_err = std::max(into.max_ratio_roundtrip_err, s.max_ratio_roundtrip_err);
  into.failures += s.failures;
}

void roundtrip_one(int n, std::uint64_t seed, std::uint64_t i, RoundTripStats& st) {
  RngStream rng(seed, i);
  const SquareMatrix g = sample_gaussian_sl(n, rng);
  ++st.samples;
  try {
    const IwasawaFactors f = decompose(g);
    st.max_recon_err = std::max(st.max_recon_err, max_abs_diff(recompose(f), g));
    st.max_ortho_defect = std::max(st.max_ortho_defect, orthogonality_defect(f.k));
    double prod = 1.0;
    for (double a : f.a) prod *= a;
    st.max_det_err = std::max({st.max_det_err, std::abs(f.k.determinant() - 1.0),
                               std::abs(prod - 1.0)});
    const auto back = diagonal_from_ratios(f.b);
    for (int j = 0; j < n; ++j)
      st.max_ratio_roundtrip_err =
          std::max(st.max_ratio_roundtrip_err, std::abs(back[j] / f.a[j] - 1.0));
  } catch (const Error&) {
    ++st.failures;
  }
}

void merge(ReductionStats& into, const ReductionStats& s) {
  into.samples += s.samples;
  into.reduced += s.reduced;
  into.max_iterations = std::max(into.max_iterations, s.max_iterations);
  into.max_excess = std::max(into.max_excess, s.max_excess);
  into.max_recon_err = std::max(into.max_recon_err, s.max_recon_err);
  into.potential_increases += s.potential_increases;
}

void reduction_one(int n, std::uint64_t seed, std::uint64_t i, int max_iter, ReductionStats& st) {
  RngStream rng(seed, i);
  const SquareMatrix g = sample_gaussian_sl(n, rng);
  ++st.samples;
  std::optional<ReductionResult> attempt;
  try {
    attempt = siegel_reduce(g, max_iter);
  } catch (const Error&) {
    return;  // counted as a sample that did not reduce
  }
  const ReductionResult& r = *attempt;
  st.max_iterations = std::max(st.max_iterations, r.iterations);
  const SquareMatrix back = r.sigma * r.gamma.to_real();
  st.max_recon_err = std::max(st.max_recon_err, max_abs_diff(back, g) / std::max(1.0, g.max_abs()));
  for (std::size_t k = 1; k < r.potential.size(); ++k)
    if (r.potential[k] > r.potential[k - 1] + 1e-12) ++st.potential_increases;
  if (r.status == ReductionStatus::reduced) {
    ++st.reduced;
    st.max_excess =
        std::max(st.max_excess, siegel_excess(r.factors.b, r.factors.u, SiegelParams::minimal()));
  }
}

// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

struct ChunkSums {
  double w = 0.0;
  double w2 = 0.0;
  std::uint64_t count = 0;
};

ChunkSums mc_chunk(int n, const SiegelParams& p, double b_min, std::uint64_t seed,
                   std::uint64_t chunk, std::uint64_t samples) {
  RngStream rng(seed, chunk);
  const std::uint64_t first = chunk * kMonteCarloChunk;
  const std::uint64_t last = std::min(samples, first + kMonteCarloChunk);
  CompensatedSum w, w2;
  for (std::uint64_t s = first; s < last; ++s) {
    const double x = sample_siegel_point(n, p, b_min, rng).weight;
    w.add(x);
    w2.add(x * x);
  }
  return {w.value(), w2.value(), last - first};
}

MonteCarloEstimate finish_mc(int n, const SiegelParams& p, double b_min,
                             const std::vector<ChunkSums>& chunks) {
  CompensatedSum w, w2;
  std::uint64_t count = 0;
  for (const auto& c : chunks) {
    w.add(c.w);
    w2.add(c.w2);
    count += c.count;
  }
  const double volume = std::pow(std::log(p.t / b_min), n - 1);
  const double mean = w.value() / double(count);
  const double var = std::max(0.0, w2.value() / double(count) - mean * mean);
  return {mean * volume, std::sqrt(var / double(count)) * volume, count};
}

void check_mc_args(std::uint64_t samples) {
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "Monte Carlo needs samples > 0");
}

}  // namespace

RoundTripStats roundtrip_corpus_serial(int n, std::uint64_t count, std::uint64_t seed) {
  RoundTripStats st;
  for (std::uint64_t i = 0; i < count; ++i) roundtrip_one(n, seed, i, st);
  return st;
}

RoundTripStats roundtrip_corpus_parallel(int n, std::uint64_t count, std::uint64_t seed,
                                         int threads) {
  RoundTripStats total;
  const auto m = static_cast<long long>(count);
#pragma omp parallel num_threads(std::max(1, threads))
  {
    RoundTripStats local;
#pragma omp for schedule(static)
    for (long long i = 0; i < m; ++i) roundtrip_one(n, seed, static_cast<std::uint64_t>(i), local);
#pragma omp critical(siegel_roundtrip_merge)
    merge(total, local);
  }
  return total;
}

ReductionStats reduction_corpus_serial(int n, std::uint64_t count, std::uint64_t seed,
                                       int max_iter) {
  ReductionStats st;
  for (std::uint64_t i = 0; i < count; ++i) reduction_one(n, seed, i, max_iter, st);
  return st;
}

ReductionStats reduction_corpus_parallel(int n, std::uint64_t count, std::uint64_t seed,
                                         int threads, int max_iter) {
  ReductionStats total;
  const auto m = static_cast<long long>(count);
#pragma omp parallel num_threads(std::max(1, threads))
  {
    ReductionStats local;
#pragma omp for schedule(dynamic, 64)
    for (long long i = 0; i < m; ++i)
      reduction_one(n, seed, static_cast<std::uint64_t>(i), max_iter, local);
#pragma omp critical(siegel_reduction_merge)
    merge(total, local);
  }
  return total;
}

MonteCarloEstimate siegel_density_mc_serial(int n, const SiegelParams& p, double b_min,
                                            std::uint64_t samples, std::uint64_t seed) {
  check_mc_args(samples);
  const std::uint64_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<ChunkSums> sums;
  for (std::uint64_t c = 0; c < chunks; ++c) sums.push_back(mc_chunk(n, p, b_min, seed, c, samples));
  return finish_mc(n, p, b_min, sums);
}

MonteCarloEstimate siegel_density_mc_parallel(int n, const SiegelParams& p, double b_min,
                                              std::uint64_t samples, std::uint64_t seed,
                                              int threads) {
  check_mc_args(samples);
  const auto chunks = static_cast<long long>((samples + kMonteCarloChunk - 1) / kMonteCarloChunk);
  std::vector<ChunkSums> sums(static_cast<std::size_t>(chunks));
  // Validate once up front so worker threads never throw.
  RngStream probe(seed, 0);
  (void)sample_siegel_point(n, p, b_min, probe);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, threads))
  for (long long c = 0; c < chunks; ++c)
    sums[c] = mc_chunk(n, p, b_min, seed, static_cast<std::uint64_t>(c), samples);
  return finish_mc(n, p, b_min, sums);
}

std::vector<GrowthRow> growth_table_parallel(int n_max, int threads) {
  if (n_max < 2 || n_max > 2000)
    throw Error(ErrorKind::InvalidRange, "growth_table needs 2 <= n_max <= 2000");
  std::vector<GrowthRow> rows(static_cast<std::size_t>(n_max - 1));
#pragma omp parallel for schedule(dynamic, 4) num_threads(std::max(1, threads))
  for (int n = 2; n <= n_max; ++n) rows[n - 2] = growth_row(n);
  return rows;
}

}  // namespace siegel
