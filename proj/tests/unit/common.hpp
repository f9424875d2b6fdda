#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>

#include "carkit/errors.hpp"

namespace carkit::testing {

/// Code of the CarkitError thrown by f; fails the test when nothing is thrown.
inline ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const CarkitError& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidInput;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace carkit::testing
