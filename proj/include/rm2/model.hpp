#pragma once

// Rosen-Morse II model: V(x) = -(lambda^2 - 1/4) sech^2(x) + 2 beta tanh(x),
// with hbar^2/2m = 1.

#include <string_view>

#include "rm2/config.hpp"
#include "rm2/types.hpp"

namespace rm2 {

struct ModelParams {
  double lambda = 1.0;
  double beta = 0.0;

  /// lambda^2 - 1/4, the depth coefficient of the sech^2 term.
  double well_coefficient() const { return lambda * lambda - 0.25; }
};

/// Throws InvalidArgument unless lambda > 0 and beta >= 0.
void validate(const ModelParams& p);

enum class PotentialShape { Well, Step, Barrier };

std::string_view to_string(PotentialShape shape);

struct Momenta {
  Complex k;        // sqrt(E + 2 beta), left channel
  Complex k_prime;  // sqrt(E - 2 beta), right channel

  Complex energy() const { return 0.5 * (k * k + k_prime * k_prime); }
  Complex beta() const { return 0.25 * (k * k - k_prime * k_prime); }
};

namespace model {

double potential(const ModelParams& p, double x);

/// Potential written in terms of the sech^2 coefficient directly; negative
/// coefficients describe the imaginary-lambda (barrier) family.
double potential_from_coefficient(double well_coefficient, double beta, double x);

/// dV/dx.
double potential_derivative(const ModelParams& p, double x);

/// Well if 0 < beta < c, Step if 0 < c < beta, Barrier if c < 0 and |c| > beta.
/// Anything else throws Unclassified.
PotentialShape classify_shape(double well_coefficient, double beta);

/// Principal branch square roots (Re >= 0, Im >= 0 on the imaginary axis).
Momenta momenta_from_energy(const ModelParams& p, Complex energy, const Tolerances& tol = default_tolerances());

/// Momenta on an explicit sheet: each root is the principal one multiplied by
/// the given sign (+1 or -1).
Momenta momenta_on_sheet(const ModelParams& p, Complex energy, int sign_k, int sign_k_prime,
                         const Tolerances& tol = default_tolerances());

}  // namespace model
}  // namespace rm2
