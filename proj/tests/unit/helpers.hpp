#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "rm2/error.hpp"
#include "rm2/types.hpp"

namespace testing {

inline double rel(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

template <typename F>
rm2::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const rm2::Error& e) {
    return e.code();
  }
  FAIL("no rm2::Error thrown");
  return rm2::ErrorCode::InvalidArgument;
}

// Worst |-f'' + (V - E) f| relative to the largest of |f|, |f''| and
// |(V - E) f| over the sample points, with a five-point second difference.
template <typename Sampler>
double ode_residual(const Sampler& f, const std::function<double(double)>& v, double energy, double x_min,
                    double x_max, int points, double h = 1e-3) {
  double worst = 0.0;
  double scale = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = x_min + (x_max - x_min) * i / (points - 1);
    double vals[5];
    for (int j = -2; j <= 2; ++j) vals[j + 2] = f(x + j * h).actual();
    const double f2 = (-vals[4] + 16 * vals[3] - 30 * vals[2] + 16 * vals[1] - vals[0]) / (12 * h * h);
    const double vf = (v(x) - energy) * vals[2];
    worst = std::max(worst, std::abs(vf - f2));
    scale = std::max({scale, std::abs(vals[2]), std::abs(f2), std::abs(vf)});
  }
  return worst / scale;
}

}  // namespace testing
