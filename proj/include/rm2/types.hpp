#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace rm2 {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

/// A function sample in factored form: f = exp(log_scale) * value and
/// f' = exp(log_scale) * derivative. The exponent absorbs the sech/cosh and
/// exponential prefactors so that value and derivative stay representable
/// far from the origin.
template <typename Scalar>
struct Scaled {
  double log_scale = 0.0;
  Scalar value{};
  Scalar derivative{};

  Scalar actual() const { return std::exp(log_scale) * value; }
  Scalar actual_derivative() const { return std::exp(log_scale) * derivative; }
  /// f'/f, independent of the scale.
  Scalar log_derivative() const { return derivative / value; }
};

using ScaledReal = Scaled<double>;
using ScaledComplex = Scaled<Complex>;

/// Ratio f/g of two scaled samples, returned as an ordinary number.
template <typename Scalar>
Scalar ratio(const Scaled<Scalar>& f, const Scaled<Scalar>& g) {
  return std::exp(f.log_scale - g.log_scale) * (f.value / g.value);
}

/// Uniform grid with `points` nodes including both end points.
struct Grid {
  double x_min = -10.0;
  double x_max = 10.0;
  int points = 2001;

  double step() const { return points > 1 ? (x_max - x_min) / (points - 1) : 0.0; }
  double at(int i) const { return x_min + step() * i; }
  std::vector<double> nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = at(i);
    return xs;
  }
};

/// Parses "x_min:x_max:points".
Grid parse_grid(const std::string& text);

/// log(1 + e^x) without overflow.
inline double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// log sech(x) = log 2 - |x| - log(1 + e^{-2|x|}).
inline double log_sech(double x) {
  const double a = std::abs(x);
  return kLn2 - a - std::log1p(std::exp(-2.0 * a));
}

}  // namespace rm2
