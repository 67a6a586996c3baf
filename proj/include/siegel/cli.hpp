#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "siegel/tolerances.hpp"

namespace siegel {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat JSON configuration. Keys: seed, output_format (json|csv|pretty), threads,
/// recon_tol, ortho_tol, det_tol, singular_tol, cond_max, max_iter, witness_budget,
/// mc_samples, height_cap. Unknown keys are rejected.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string output_format = "json";
  int threads = 1;
  Tolerances tolerances;
  /// Reduction exchange budget; absent means 10 n^2.
  std::optional<long> max_iter;
  long witness_budget = 2000;
  long mc_samples = 1000000;
  /// Enumeration height cap; absent means the per-n default.
  std::optional<long> height_cap;
};

/// Throws MalformedConfig (with line and column for syntax errors).
RunConfig parse_config(const std::string& text);
/// Absent path gives the defaults.
RunConfig load_config(const std::optional<std::string>& path);

/// Runs one subcommand: 0 on success, 2 on usage errors, 1 on computation errors. Reports go
/// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace siegel
