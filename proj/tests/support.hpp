#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "rgsw/model.hpp"

namespace rgsw::test {

inline PhysParams shallow_params() {
  const double pi = std::numbers::pi;
  return PhysParams(10.0 * std::cos(pi / 10), 10.0 * std::sin(pi / 10), 1.0, 0.9);
}

inline PhysParams steep_params() {
  const double pi = std::numbers::pi;
  return PhysParams(10.0 * std::cos(pi / 6), 5.0, 0.05, 0.04);
}

inline double relerr(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Plain bisection on [lo, hi]; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rgsw::test
