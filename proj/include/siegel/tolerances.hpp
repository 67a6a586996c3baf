#pragma once

namespace siegel {

// Default numerical thresholds; sized for binary64 with n <= 50.
struct Tolerances {
  double recon_tol = 1e-10;
  double ortho_tol = 1e-10;
  double det_tol = 1e-9;
  double singular_tol = 1e-12;
  double cond_max = 1e12;
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace siegel
