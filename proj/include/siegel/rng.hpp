#pragma once

#include <cstdint>
#include <random>

namespace siegel {

/// Reproducible random stream keyed by (seed, stream_index). Two streams with the same key
/// produce bitwise-identical draws; distinct indices give statistically independent streams,
/// which is how parallel workers and per-candidate searches get their randomness.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_; }

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller, so the sequence does not depend on the standard
  /// library's distribution implementation.
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace siegel
