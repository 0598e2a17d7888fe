#pragma once

// Complex Gamma, Gauss hypergeometric 2F1 on the real segment [0, 1) and
// Jacobi polynomials with arbitrary real parameters.

#include <initializer_list>

#include "rm2/config.hpp"
#include "rm2/types.hpp"

namespace rm2::specfun {

/// True when z lies within `distance` of 0, -1, -2, ...
bool is_gamma_pole(Complex z, double distance);

/// log Gamma(z). Lanczos approximation (g = 7) with reflection for Re z < 1/2.
/// The imaginary part follows the principal branch for Re z >= 1/2; elsewhere
/// it is fixed only modulo 2*pi, which is irrelevant to every use of exp().
/// Throws PoleOfGamma near non-positive integers.
Complex log_gamma(Complex z, const Tolerances& tol = default_tolerances());

Complex gamma(Complex z, const Tolerances& tol = default_tolerances());

/// 1/Gamma(z), an entire function: exactly zero at the poles of Gamma.
Complex rgamma(Complex z, const Tolerances& tol = default_tolerances());

/// prod Gamma(numerator) / prod Gamma(denominator), evaluated in log space.
/// Returns 0 when a denominator argument sits on a pole; a numerator pole
/// throws PoleOfGamma.
Complex gamma_ratio(std::initializer_list<Complex> numerator,
                    std::initializer_list<Complex> denominator,
                    const Tolerances& tol = default_tolerances());

struct Hyp2F1Params {
  Complex a;
  Complex b;
  Complex c;
  double z = 0.0;
};

/// 2F1(a, b; c; z) for z in [0, 1). Power series for z <= 1/2 and the
/// z -> 1 - z connection formula above. Terminating series (a or b a
/// non-positive integer) are summed exactly for all z in [0, 1].
Complex hyp2f1(const Hyp2F1Params& p, const Tolerances& tol = default_tolerances());

/// Same as hyp2f1 with the complementary argument supplied separately so
/// that 1 - z keeps full relative precision as z -> 1.
Complex hyp2f1(Complex a, Complex b, Complex c, double z, double one_minus_z,
               const Tolerances& tol = default_tolerances());

/// 2F1 = exp(log_scale) * value, for arguments where the function leaves the
/// double range (large negative c near z = 1).
struct ScaledHyp {
  double log_scale = 0.0;
  Complex value;

  Complex actual() const { return std::exp(log_scale) * value; }
};

ScaledHyp hyp2f1_scaled(Complex a, Complex b, Complex c, double z, double one_minus_z,
                        const Tolerances& tol = default_tolerances());
ScaledHyp hyp2f1_derivative_scaled(Complex a, Complex b, Complex c, double z, double one_minus_z,
                                   const Tolerances& tol = default_tolerances());

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
Complex hyp2f1_derivative(const Hyp2F1Params& p, const Tolerances& tol = default_tolerances());
Complex hyp2f1_derivative(Complex a, Complex b, Complex c, double z, double one_minus_z,
                          const Tolerances& tol = default_tolerances());

/// The two evaluation routes, exposed for continuity checks.
Complex hyp2f1_series(Complex a, Complex b, Complex c, double z,
                      const Tolerances& tol = default_tolerances());
Complex hyp2f1_connection(Complex a, Complex b, Complex c, double z, double one_minus_z,
                          const Tolerances& tol = default_tolerances());

struct JacobiParams {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double z = 0.0;
};

/// P_n^{(alpha, beta)}(z) from the explicit binomial sum, valid for any real
/// alpha and beta (no recurrence coefficients that can vanish).
double jacobi_p(const JacobiParams& p, const Tolerances& tol = default_tolerances());

/// d/dz P_n^{(alpha, beta)}(z) = (n + alpha + beta + 1)/2 * P_{n-1}^{(alpha+1, beta+1)}(z).
double jacobi_p_derivative(const JacobiParams& p, const Tolerances& tol = default_tolerances());

}  // namespace rm2::specfun
