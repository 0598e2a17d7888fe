#include "rm2/analytic.hpp"

#include <cmath>

#include "rm2/error.hpp"
#include "rm2/specfun.hpp"

namespace rm2 {

std::string_view to_string(Family family) { return family == Family::Phi ? "phi" : "psi"; }

namespace {

double signed_lambda(const ModelParams& p, Condition condition) {
  return condition == Condition::First ? p.lambda : -p.lambda;
}

// 1 - tanh^2 x without cancellation.
double sech_squared(double x) { return std::exp(2.0 * log_sech(x)); }

}  // namespace

PoleExponents pole_exponents(const ModelParams& p, Condition condition, int n, const Tolerances& tol) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "pole index must be non-negative");
  const double d = signed_lambda(p, condition) - 0.5 - n;
  if (std::abs(d) < tol.exponent_singularity)
    throw Error(ErrorCode::ExponentSingularity,
                "lambda - 1/2 - n vanishes for n = " + std::to_string(n));
  PoleExponents e;
  e.exponent = d;
  e.mu = d + p.beta / d;
  e.nu = d - p.beta / d;
  e.energy = -d * d - (p.beta * p.beta) / (d * d);
  return e;
}

namespace analytic {

namespace {

const Complex kI(0.0, 1.0);

void check_c_parameter(Complex c, const Tolerances& tol) {
  if (specfun::is_gamma_pole(c, tol.gamma_pole_distance))
    throw Error(ErrorCode::DegenerateParameters, "hypergeometric c parameter is a non-positive integer");
}

// (1 - t)^{i k'/2} (1 + t)^{i k/2} 2F1(1/2 - L + i(k+k')/2, 1/2 + L + i(k+k')/2; 1 + ik; z)
ScaledComplex psi_kernel(double lambda, Complex k, Complex kp, double x, const Tolerances& tol) {
  const double t = std::tanh(x);
  const double log_one_minus_t = kLn2 - softplus(2.0 * x);
  const double log_one_plus_t = kLn2 - softplus(-2.0 * x);
  const double z = 1.0 / (1.0 + std::exp(-2.0 * x));
  const double omz = 1.0 / (1.0 + std::exp(2.0 * x));

  const Complex a = 0.5 - lambda + 0.5 * kI * (k + kp);
  const Complex b = 0.5 + lambda + 0.5 * kI * (k + kp);
  const Complex c = 1.0 + kI * k;
  check_c_parameter(c, tol);

  const Complex log_prefactor = 0.5 * kI * kp * log_one_minus_t + 0.5 * kI * k * log_one_plus_t;
  const Complex dlog_prefactor = 0.5 * kI * (k * (1.0 - t) - kp * (1.0 + t));
  const specfun::ScaledHyp fs = specfun::hyp2f1_scaled(a, b, c, z, omz, tol);
  const specfun::ScaledHyp dfs = specfun::hyp2f1_derivative_scaled(a, b, c, z, omz, tol);
  const Complex f = fs.value;
  const Complex df = std::exp(dfs.log_scale - fs.log_scale) * dfs.value * (0.5 * sech_squared(x));

  const Complex phase = std::exp(Complex(0.0, log_prefactor.imag()));
  ScaledComplex out;
  out.log_scale = log_prefactor.real() + fs.log_scale;
  out.value = phase * f;
  out.derivative = phase * (dlog_prefactor * f + df);
  return out;
}

}  // namespace

ScaledComplex eval_general(const ModelParams& p, const Momenta& m, GeneralFamily family, double x,
                           const Tolerances& tol) {
  if (family == GeneralFamily::Psi) return psi_kernel(p.lambda, m.k, m.k_prime, x, tol);
  // phi = 2^{ik} psi with k -> -k
  ScaledComplex out = psi_kernel(p.lambda, -m.k, m.k_prime, x, tol);
  const Complex log_two_power = kI * m.k * kLn2;
  const Complex phase = std::exp(Complex(0.0, log_two_power.imag()));
  out.log_scale += log_two_power.real();
  out.value *= phase;
  out.derivative *= phase;
  return out;
}

ScaledComplex eval_general(const ModelParams& p, Complex energy, GeneralFamily family, double x,
                           const Tolerances& tol) {
  return eval_general(p, model::momenta_from_energy(p, energy, tol), family, x, tol);
}

PoleEigenfunction::PoleEigenfunction(const ModelParams& p, Condition condition, Family family, int n,
                                     const Tolerances& tol)
    : params_(p),
      condition_(condition),
      family_(family),
      n_(n),
      signed_lambda_(signed_lambda(p, condition)),
      exponents_(pole_exponents(p, condition, n, tol)),
      tol_(tol) {
  if (family_ == Family::Psi) {
    const double d = exponents_.exponent;
    check_c_parameter(Complex(n_ - signed_lambda_ + p.beta / d + 1.5, 0.0), tol_);
  }
}

ScaledReal PoleEigenfunction::operator()(double x) const {
  const double d = exponents_.exponent;
  const double beta = params_.beta;
  const double t = std::tanh(x);
  ScaledReal out;
  if (family_ == Family::Phi) {
    // e^{-beta x/d} sech^d(x) P_n^{(mu, nu)}(tanh x)
    out.log_scale = -beta * x / d + d * log_sech(x);
    const double slope = -beta / d - d * t;
    const specfun::JacobiParams jp{n_, exponents_.mu, exponents_.nu, t};
    const double poly = specfun::jacobi_p(jp, tol_);
    const double dpoly = specfun::jacobi_p_derivative(jp, tol_) * sech_squared(x);
    out.value = poly;
    out.derivative = slope * poly + dpoly;
    return out;
  }
  // e^{beta x/d} cosh^d(x) 2F1(n+1, n+1-2L; n - L + beta/d + 3/2; z)
  out.log_scale = beta * x / d - d * log_sech(x);
  const double slope = beta / d + d * t;
  const double z = 1.0 / (1.0 + std::exp(-2.0 * x));
  const double omz = 1.0 / (1.0 + std::exp(2.0 * x));
  const Complex a(n_ + 1.0, 0.0);
  const Complex b(n_ + 1.0 - 2.0 * signed_lambda_, 0.0);
  const Complex c(n_ - signed_lambda_ + beta / d + 1.5, 0.0);
  const specfun::ScaledHyp fs = specfun::hyp2f1_scaled(a, b, c, z, omz, tol_);
  const specfun::ScaledHyp dfs = specfun::hyp2f1_derivative_scaled(a, b, c, z, omz, tol_);
  const double f = fs.value.real();
  const double df = std::exp(dfs.log_scale - fs.log_scale) * dfs.value.real() * 0.5 * sech_squared(x);
  out.log_scale += fs.log_scale;
  out.value = f;
  out.derivative = slope * f + df;
  return out;
}

ScaledReal eval_pole_eigenfunction(const ModelParams& p, Condition condition, Family family, int n, double x,
                                   const Tolerances& tol) {
  return PoleEigenfunction(p, condition, family, n, tol)(x);
}

}  // namespace analytic
}  // namespace rm2
