#pragma once

#include <string_view>
#include <vector>

namespace siegel {

/// log of (sqrt n)^{n^2-1}: any gamma with gamma Sigma meeting Sigma has height at most this
/// (for the minimal Siegel set).
double log_height_bound(int n);
double height_bound(int n);

/// The exponent of the height bound appears in three different forms; all are exposed so
/// reports can show which one was used. The first entry is the default.
struct HeightBoundVariant {
  std::string_view label;
  double log_value;
};

std::vector<HeightBoundVariant> height_bound_variants(int n);

}  // namespace siegel
