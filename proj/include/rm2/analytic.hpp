#pragma once

// Exact solutions of -f'' + V f = E f for the Rosen-Morse II potential.
//
// General energies use the hypergeometric pair in the variable
// z = (1 + tanh x)/2; at S-matrix pole energies the closed forms in terms of
// Jacobi polynomials (phi family) or terminating-friendly 2F1 (psi family)
// are used. Condition-2 quantities are the lambda -> -lambda images of the
// Condition-1 ones and share the same code path through a signed lambda.

#include <string_view>

#include "rm2/config.hpp"
#include "rm2/model.hpp"
#include "rm2/types.hpp"

namespace rm2 {

enum class Condition { First = 1, Second = 2 };
enum class Family { Phi, Psi };

std::string_view to_string(Family family);

/// Closed-form pole data for one (condition, n). `exponent` is
/// lambda_s - 1/2 - n with lambda_s = +lambda (Condition 1) or -lambda
/// (Condition 2).
struct PoleExponents {
  double exponent = 0.0;
  double mu = 0.0;      // -i k'
  double nu = 0.0;      // -i k
  double energy = 0.0;  // -(mu^2 + nu^2)/2
};

/// Throws ExponentSingularity when |exponent| is below tol.exponent_singularity.
PoleExponents pole_exponents(const ModelParams& p, Condition condition, int n,
                             const Tolerances& tol = default_tolerances());

namespace analytic {

enum class GeneralFamily { Psi, Phi };

/// psi (e^{ikx} at -inf) or phi (e^{-ikx} at -inf) at arbitrary complex energy,
/// principal-branch momenta.
ScaledComplex eval_general(const ModelParams& p, Complex energy, GeneralFamily family, double x,
                           const Tolerances& tol = default_tolerances());

/// Same with explicitly supplied momenta (any sheet).
ScaledComplex eval_general(const ModelParams& p, const Momenta& m, GeneralFamily family, double x,
                           const Tolerances& tol = default_tolerances());

/// Evaluatable solution at a pole energy: phi^{c}_{lambda,n} or psi^{c}_{lambda,n}.
class PoleEigenfunction {
 public:
  PoleEigenfunction(const ModelParams& p, Condition condition, Family family, int n,
                    const Tolerances& tol = default_tolerances());

  ScaledReal operator()(double x) const;

  const ModelParams& params() const { return params_; }
  Condition condition() const { return condition_; }
  Family family() const { return family_; }
  int n() const { return n_; }
  double energy() const { return exponents_.energy; }
  const PoleExponents& exponents() const { return exponents_; }

 private:
  ModelParams params_;
  Condition condition_;
  Family family_;
  int n_;
  double signed_lambda_;
  PoleExponents exponents_;
  Tolerances tol_;
};

ScaledReal eval_pole_eigenfunction(const ModelParams& p, Condition condition, Family family, int n, double x,
                                   const Tolerances& tol = default_tolerances());

}  // namespace analytic
}  // namespace rm2
