#pragma once

namespace siegel {

/// log Gamma(x) for x >= 1/2: upward recurrence to x >= 15, then the Stirling series through
/// the B_16 term. Absolute error below 1e-13 on that range.
double log_gamma(double x);

/// zeta(s) - 1 for integer s >= 2. Nine explicit terms plus an Euler-Maclaurin tail at N = 10
/// with corrections through B_20; relative error of zeta(s) is below 1e-15, so any rel_tol of
/// at least that is honored. Throws InvalidArgument for s < 2 or rel_tol < 1e-15.
double zeta_minus_one(int s, double rel_tol = 1e-14);
double zeta(int s, double rel_tol = 1e-14);
/// log zeta(s), accurate in absolute terms even when zeta(s) - 1 is below machine epsilon.
double log_zeta(int s);

}  // namespace siegel
