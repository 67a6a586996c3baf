#include "siegel/bounds.hpp"

#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

namespace {

void require_n(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "height bound needs n >= 2");
}

}  // namespace

double log_height_bound(int n) {
  require_n(n);
  const double nd = n;
  return 0.5 * (nd * nd - 1.0) * std::log(nd);
}

double height_bound(int n) { return std::exp(log_height_bound(n)); }

std::vector<HeightBoundVariant> height_bound_variants(int n) {
  require_n(n);
  const double nd = n;
  const double ln = std::log(nd);
  return {
      {"sqrt(n)^(n^2-1)", log_height_bound(n)},
      {"sqrt(n)^(n^2-n)", 0.5 * (nd * nd - nd) * ln},
      {"n^((n^2-n)/2)", 0.5 * (nd * nd - nd) * ln},
      {"exp(((n^2-n)/2) ln n)", 0.5 * (nd * nd - nd) * ln},
  };
}

}  // namespace siegel
