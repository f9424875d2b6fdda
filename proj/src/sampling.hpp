#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "carkit/rational.hpp"

namespace carkit::detail {

// 53 random mantissa bits; identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<double> cumulative(const RationalVector& weights) {
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& w : weights) cdf.push_back(acc += to_double(w));
  return cdf;
}

/// Inverse-CDF draw; never returns an index past the end.
inline std::size_t draw_index(const std::vector<double>& cdf, std::mt19937_64& rng) {
  const double u = uniform01(rng) * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace carkit::detail
