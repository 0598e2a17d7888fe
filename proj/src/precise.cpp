#include "precise.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include "rm2/error.hpp"

namespace rm2::precise {

namespace {

bool gamma_pole(const Real& v) { return v <= 0 && v == boost::multiprecision::round(v); }

Real inverse_gamma(const Real& v) { return gamma_pole(v) ? Real(0) : 1 / boost::math::tgamma(v); }

Real series(const Real& a, const Real& b, const Real& c, const Real& z) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  const double turning = std::max({0.0, -a.convert_to<double>(), -b.convert_to<double>(), -c.convert_to<double>()});
  Real term = 1;
  Real sum = 1;
  for (int k = 0; k < 200000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (term == 0 || (k > turning && abs(term) < eps * abs(sum))) return sum;
  }
  throw Error(ErrorCode::NoConvergence, "extended-precision 2F1 series did not converge");
}

Real hyp2f1(const Real& a, const Real& b, const Real& c, const Real& z, const Real& omz) {
  if (z <= Real(0.5)) return series(a, b, c, z);
  const Real s = c - a - b;
  if (s == boost::multiprecision::round(s))
    throw Error(ErrorCode::DegenerateConnection, "extended-precision 2F1: c - a - b is an integer");
  const Real gc = boost::math::tgamma(c);
  Real out = 0;
  if (const Real w = inverse_gamma(c - a) * inverse_gamma(c - b); w != 0)
    out += gc * boost::math::tgamma(s) * w * series(a, b, 1 - s, omz);
  if (const Real w = inverse_gamma(a) * inverse_gamma(b); w != 0)
    out += pow(omz, s) * gc * boost::math::tgamma(-s) * w * series(c - a, c - b, 1 + s, omz);
  return out;
}

}  // namespace

Sample psi(const analytic::PoleEigenfunction& f, double x) {
  if (f.family() != Family::Psi) throw Error(ErrorCode::InvalidArgument, "extended precision covers psi only");
  const Real d = f.exponents().exponent;
  const Real beta = f.params().beta;
  const int n = f.n();
  const Real signed_lambda = d + Real(0.5) + n;
  const Real xr = x;
  const Real t = tanh(xr);
  const Real z = 1 / (1 + exp(-2 * xr));
  const Real omz = 1 / (1 + exp(2 * xr));
  const Real a = n + 1;
  const Real b = n + 1 - 2 * signed_lambda;
  const Real c = n - signed_lambda + beta / d + Real(1.5);
  const Real g = hyp2f1(a, b, c, z, omz);
  // dz/dx = 2 z (1 - z)
  const Real dg = a * b / c * hyp2f1(a + 1, b + 1, c + 1, z, omz) * 2 * z * omz;
  const Real prefactor = exp(beta * xr / d) * pow(cosh(xr), d);
  Sample out;
  out.value = prefactor * g;
  out.derivative = prefactor * ((beta / d + d * t) * g + dg);
  return out;
}

double b_plus_psi(const ModelParams& p, const analytic::PoleEigenfunction& f, double x) {
  const Sample s = psi(f, x);
  const Real d = Real(p.lambda) - Real(0.5);
  const Real w = Real(p.beta) / d + d * tanh(Real(x));
  return (-s.derivative + w * s.value).convert_to<double>();
}

}  // namespace rm2::precise
