#pragma once

#include <string_view>
#include <vector>

#include "siegel/iwasawa.hpp"
#include "siegel/matrix.hpp"

namespace siegel {

enum class ReductionStatus { reduced, budget_exhausted };

std::string_view to_string(ReductionStatus s);

/// g = sigma * gamma with gamma in SL_n(Z).
struct ReductionResult {
  UnimodularIntMatrix gamma;
  SquareMatrix sigma;
  /// Number of exchange steps performed.
  int iterations = 0;
  ReductionStatus status = ReductionStatus::budget_exhausted;
  /// Iwasawa factors of sigma.
  IwasawaFactors factors;
  /// reduction_potential of the working matrix before the first and after every exchange.
  std::vector<double> potential;
};

/// 10 n^2.
int default_max_iter(int n);

/// sum_{k=1}^{n-1} log(a_1 ... a_k): the log of the product of the covolumes of the leading
/// column sublattices. Size reduction leaves it unchanged and every exchange lowers it.
double reduction_potential(const IwasawaFactors& f);

/// Moves g into Sigma_{2/sqrt(3), 1/2} by right multiplication with SL_n(Z): full size
/// reduction of the u-coordinates, then an exchange of columns i, i+1 (one sign flipped) at the
/// first i with b_i > 2/sqrt(3), repeated until no exchange is needed or max_iter exchanges
/// have been spent. max_iter < 0 selects default_max_iter(n).
ReductionResult siegel_reduce(const SquareMatrix& g, int max_iter = -1,
                              const Tolerances& tol = kDefaultTolerances);

}  // namespace siegel
