#include "rm2/specfun.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "rm2/error.hpp"

namespace rm2::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const Complex kI(0.0, 1.0);

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// log Gamma for Re z >= 1/2.
Complex log_gamma_right(Complex z) {
  const Complex zm = z - 1.0;
  Complex sum(kLanczosCoef[0], 0.0);
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) sum += kLanczosCoef[i] / (zm + static_cast<double>(i));
  const Complex t = zm + kLanczosG + 0.5;
  Complex lg = 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(sum);

  // Pin the imaginary part to the principal branch using the Stirling estimate,
  // which is accurate to far better than pi in the right half-plane.
  const Complex stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + 1.0 / (12.0 * z);
  const double turns = std::round((stirling.imag() - lg.imag()) / (2.0 * kPi));
  lg += Complex(0.0, 2.0 * kPi * turns);
  return lg;
}

// log sin(pi z), with argument reduction on the real part and an overflow
// free form for large |Im z|.
Complex log_sin_pi(Complex z) {
  const double n = std::round(z.real());
  const Complex w(z.real() - n, z.imag());
  const bool odd = std::fmod(std::abs(n), 2.0) == 1.0;
  Complex value;
  if (w.imag() > 20.0) {
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w})
    value = std::log(0.5 * kI) - kI * kPi * w + std::log(1.0 - std::exp(2.0 * kI * kPi * w));
  } else if (w.imag() < -20.0) {
    value = std::log(-0.5 * kI) + kI * kPi * w + std::log(1.0 - std::exp(-2.0 * kI * kPi * w));
  } else {
    value = std::log(std::sin(kPi * w));
  }
  if (odd) value += Complex(0.0, kPi);
  return value;
}

bool near_nonpositive_integer(Complex a, double distance) {
  if (std::abs(a.imag()) > distance) return false;
  const double r = std::round(a.real());
  return r <= 0.0 && std::abs(a.real() - r) <= distance;
}

}  // namespace

bool is_gamma_pole(Complex z, double distance) { return near_nonpositive_integer(z, distance); }

Complex log_gamma(Complex z, const Tolerances& tol) {
  if (is_gamma_pole(z, tol.gamma_pole_distance))
    throw Error(ErrorCode::PoleOfGamma, "log_gamma at " + describe(z));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex gamma(Complex z, const Tolerances& tol) { return std::exp(log_gamma(z, tol)); }

Complex rgamma(Complex z, const Tolerances& tol) {
  if (is_gamma_pole(z, tol.gamma_pole_distance)) return {0.0, 0.0};
  return std::exp(-log_gamma(z, tol));
}

Complex gamma_ratio(std::initializer_list<Complex> numerator, std::initializer_list<Complex> denominator,
                    const Tolerances& tol) {
  for (const Complex& d : denominator)
    if (is_gamma_pole(d, tol.gamma_pole_distance)) return {0.0, 0.0};
  Complex acc(0.0, 0.0);
  for (const Complex& n : numerator) acc += log_gamma(n, tol);
  for (const Complex& d : denominator) acc -= log_gamma(d, tol);
  return std::exp(acc);
}

namespace {

void check_c(Complex c, const Tolerances& tol) {
  if (near_nonpositive_integer(c, tol.gamma_pole_distance))
    throw Error(ErrorCode::InvalidArgument, "2F1 with c a non-positive integer: c = " + describe(c));
}

// Degree of the polynomial when a or b is a non-positive integer, else -1.
int terminating_degree(Complex a, Complex b) {
  constexpr double kExact = 1e-12;
  int degree = -1;
  for (const Complex& p : {a, b}) {
    if (near_nonpositive_integer(p, kExact)) {
      const int m = static_cast<int>(-std::round(p.real()));
      if (degree < 0 || m < degree) degree = m;
    }
  }
  return degree;
}

Complex finite_sum(Complex a, Complex b, Complex c, double z, int degree) {
  Complex term(1.0, 0.0);
  Complex sum(1.0, 0.0);
  for (int k = 0; k < degree; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    sum += term;
  }
  return sum;
}

}  // namespace

namespace {

struct SeriesResult {
  Complex sum;
  double l1 = 0.0;  // sum of |terms|, a cancellation gauge
  bool converged = false;
};

SeriesResult power_series(Complex a, Complex b, Complex c, double z, int budget, const Tolerances& tol) {
  // Terms can die off and resurge while k is still below -Re(c): (c)_k then
  // passes close to zero. Termination is only trusted beyond that point.
  const double turning = std::max({0.0, -a.real(), -b.real(), -c.real()});
  SeriesResult r{Complex(1.0, 0.0), 1.0, false};
  Complex term(1.0, 0.0);
  for (int k = 0; k < budget; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    r.sum += term;
    r.l1 += std::abs(term);
    if (term == Complex(0.0, 0.0)) {
      r.converged = true;
      return r;
    }
    if (std::abs(term) <= tol.series_relative * std::abs(r.sum)) {
      // Accept only once the series is in its geometrically decaying regime.
      const double kn = kk + 1.0;
      const double next = std::abs((a + kn) * (b + kn) / ((c + kn) * (kn + 1.0))) * z;
      if (next < 1.0 && kn > turning + 1.0) {
        r.converged = true;
        return r;
      }
    }
  }
  return r;
}

}  // namespace

Complex hyp2f1_series(Complex a, Complex b, Complex c, double z, const Tolerances& tol) {
  check_c(c, tol);
  if (const int degree = terminating_degree(a, b); degree >= 0) return finite_sum(a, b, c, z, degree);
  const SeriesResult r = power_series(a, b, c, z, tol.series_max_terms, tol);
  if (!r.converged) throw Error(ErrorCode::NoConvergence, "2F1 series did not converge at z = " + std::to_string(z));
  return r.sum;
}

namespace {

ScaledHyp from_log(Complex log_factor, const ScaledHyp& f) {
  return {f.log_scale + log_factor.real(), std::exp(Complex(0.0, log_factor.imag())) * f.value};
}

ScaledHyp add(const ScaledHyp& x, const ScaledHyp& y) {
  if (x.value == Complex(0.0, 0.0)) return y;
  if (y.value == Complex(0.0, 0.0)) return x;
  const double ref = std::max(x.log_scale, y.log_scale);
  return {ref, std::exp(x.log_scale - ref) * x.value + std::exp(y.log_scale - ref) * y.value};
}

// log of prod Gamma(num) / prod Gamma(den); empty when a denominator sits on a pole.
std::optional<Complex> log_gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den,
                                       const Tolerances& tol) {
  for (const Complex& d : den)
    if (is_gamma_pole(d, tol.gamma_pole_distance)) return std::nullopt;
  Complex acc(0.0, 0.0);
  for (const Complex& n : num) acc += log_gamma(n, tol);
  for (const Complex& d : den) acc -= log_gamma(d, tol);
  return acc;
}

// Series at w with complement 1 - w. When c - a or c - b is a non-positive
// integer the Euler transform (1-w)^{c-a-b} 2F1(c-a, c-b; c; w) terminates,
// which avoids the heavy cancellation of the raw series for large negative c.
ScaledHyp series_at(Complex a, Complex b, Complex c, double w, double one_minus_w, const Tolerances& tol) {
  if (terminating_degree(a, b) < 0) {
    if (const int degree = terminating_degree(c - a, c - b); degree >= 0)
      return from_log((c - a - b) * std::log(one_minus_w), {0.0, finite_sum(c - a, c - b, c, w, degree)});
  }
  return {0.0, hyp2f1_series(a, b, c, w, tol)};
}

struct ConnectionResult {
  ScaledHyp value;
  /// Rough relative rounding error: cancellation between the two terms times
  /// the error of their log-space Gamma prefactors.
  double relative_error = 0.0;
};

ConnectionResult connection(Complex a, Complex b, Complex c, double z, double one_minus_z, const Tolerances& tol) {
  check_c(c, tol);
  const Complex s = c - a - b;
  const double nearest = std::round(s.real());
  if (std::abs(s.imag()) < tol.connection_degenerate && std::abs(s.real() - nearest) < tol.connection_degenerate)
    throw Error(ErrorCode::DegenerateConnection, "c - a - b is an integer: " + describe(s));
  ScaledHyp t1{0.0, Complex(0.0, 0.0)};
  ScaledHyp t2{0.0, Complex(0.0, 0.0)};
  if (const auto l1 = log_gamma_ratio({c, s}, {c - a, c - b}, tol))
    t1 = from_log(*l1, series_at(a, b, 1.0 - s, one_minus_z, z, tol));
  if (const auto l2 = log_gamma_ratio({c, -s}, {a, b}, tol))
    t2 = from_log(*l2 + s * std::log(one_minus_z), series_at(c - a, c - b, 1.0 + s, one_minus_z, z, tol));
  ConnectionResult out;
  out.value = add(t1, t2);
  double gamma_scale = 1.0;
  for (Complex g : {c, s, -s, a, b, c - a, c - b}) gamma_scale += std::abs(g) * (1.0 + std::log1p(std::abs(g)));
  const double ref = out.value.log_scale;
  const double spread = std::exp(t1.log_scale - ref) * std::abs(t1.value) + std::exp(t2.log_scale - ref) * std::abs(t2.value);
  out.relative_error = std::numeric_limits<double>::epsilon() * gamma_scale * spread / std::abs(out.value.value);
  return out;
}

}  // namespace

Complex hyp2f1_connection(Complex a, Complex b, Complex c, double z, double one_minus_z, const Tolerances& tol) {
  return connection(a, b, c, z, one_minus_z, tol).value.actual();
}

ScaledHyp hyp2f1_scaled(Complex a, Complex b, Complex c, double z, double one_minus_z, const Tolerances& tol) {
  if (!(z >= 0.0 && z < 1.0) && !(z == 1.0 && one_minus_z >= 0.0 && one_minus_z < 1.0))
    throw Error(ErrorCode::InvalidArgument, "2F1 argument outside [0, 1): z = " + std::to_string(z));
  check_c(c, tol);
  if (const int degree = terminating_degree(a, b); degree >= 0) return {0.0, finite_sum(a, b, c, z, degree)};
  if (z <= 0.5) return series_at(a, b, c, z, one_minus_z, tol);
  // Above z = 1/2 the connection terms can cancel heavily; the direct series
  // is kept whenever it converges quickly and its error estimate is smaller.
  constexpr int kDirectBudget = 2000;
  const SeriesResult direct = power_series(a, b, c, z, kDirectBudget, tol);
  const bool direct_ok = direct.converged && std::isfinite(direct.l1) && direct.sum != Complex(0.0, 0.0);
  const double series_error =
      direct_ok ? std::numeric_limits<double>::epsilon() * direct.l1 / std::abs(direct.sum)
                : std::numeric_limits<double>::infinity();
  ConnectionResult conn;
  try {
    conn = connection(a, b, c, z, one_minus_z, tol);
  } catch (const Error& e) {
    if (direct_ok && e.code() == ErrorCode::DegenerateConnection) return {0.0, direct.sum};
    throw;
  }
  if (direct_ok && !(conn.relative_error < series_error)) return {0.0, direct.sum};
  return conn.value;
}

Complex hyp2f1(Complex a, Complex b, Complex c, double z, double one_minus_z, const Tolerances& tol) {
  return hyp2f1_scaled(a, b, c, z, one_minus_z, tol).actual();
}

Complex hyp2f1(const Hyp2F1Params& p, const Tolerances& tol) { return hyp2f1(p.a, p.b, p.c, p.z, 1.0 - p.z, tol); }

ScaledHyp hyp2f1_derivative_scaled(Complex a, Complex b, Complex c, double z, double one_minus_z,
                                   const Tolerances& tol) {
  check_c(c, tol);
  const Complex factor = a * b / c;
  if (factor == Complex(0.0, 0.0)) return {0.0, factor};
  ScaledHyp f = hyp2f1_scaled(a + 1.0, b + 1.0, c + 1.0, z, one_minus_z, tol);
  f.value *= factor;
  return f;
}

Complex hyp2f1_derivative(Complex a, Complex b, Complex c, double z, double one_minus_z, const Tolerances& tol) {
  return hyp2f1_derivative_scaled(a, b, c, z, one_minus_z, tol).actual();
}

Complex hyp2f1_derivative(const Hyp2F1Params& p, const Tolerances& tol) {
  return hyp2f1_derivative(p.a, p.b, p.c, p.z, 1.0 - p.z, tol);
}

double jacobi_p(const JacobiParams& p, const Tolerances& tol) {
  if (p.n < 0) throw Error(ErrorCode::InvalidArgument, "Jacobi order must be non-negative");
  if (p.n > tol.jacobi_max_order)
    throw Error(ErrorCode::OrderTooLarge, "Jacobi order " + std::to_string(p.n) + " exceeds " +
                                              std::to_string(tol.jacobi_max_order));
  const int n = p.n;
  const double minus = 0.5 * (p.z - 1.0);
  const double plus = 0.5 * (p.z + 1.0);
  // sum_s C(n+alpha, n-s) C(n+beta, s) minus^s plus^(n-s)
  double sum = 0.0;
  for (int s = 0; s <= n; ++s) {
    double c_alpha = 1.0;
    for (int j = s + 1; j <= n; ++j) c_alpha *= (p.alpha + j) / static_cast<double>(j - s);
    double c_beta = 1.0;
    for (int j = 1; j <= s; ++j) c_beta *= (p.beta + n - s + j) / static_cast<double>(j);
    sum += c_alpha * c_beta * std::pow(minus, s) * std::pow(plus, n - s);
  }
  return sum;
}

double jacobi_p_derivative(const JacobiParams& p, const Tolerances& tol) {
  if (p.n == 0) return 0.0;
  const double factor = 0.5 * (p.n + p.alpha + p.beta + 1.0);
  return factor * jacobi_p({p.n - 1, p.alpha + 1.0, p.beta + 1.0, p.z}, tol);
}

}  // namespace rm2::specfun
