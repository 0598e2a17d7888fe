#pragma once

// Darboux/Crum transformations of the Rosen-Morse II Hamiltonian.
//
// Seeds are pole eigenfunctions of the base potential. Inside a Wronskian
// every derivative beyond the first is reduced through the seed's own
// Schroedinger equation, s^{(m)} = a_m(t) s + b_m(t) s' with a_m, b_m
// polynomials in t = tanh x, so an order-l transform needs only the value and
// first derivative of each seed.

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "rm2/analytic.hpp"
#include "rm2/config.hpp"
#include "rm2/model.hpp"
#include "rm2/oracle.hpp"
#include "rm2/spectrum.hpp"

namespace rm2 {

enum class SeedKind { GroundState, Bound, Redundant, AntiBound };

std::string_view to_string(SeedKind kind);

struct SeedSpec {
  SeedKind kind = SeedKind::GroundState;
  Condition condition = Condition::First;
  int n = 0;
};

struct SusyChain {
  ModelParams base;
  std::vector<SeedSpec> seeds;

  int order() const { return static_cast<int>(seeds.size()); }
};

namespace susy {

/// Polynomial in t = tanh x, lowest degree first.
using Polynomial = Eigen::VectorXd;

/// Reduction coefficients for one energy: derivative m of any solution at
/// that energy equals a[m](t) f + b[m](t) f'.
struct DerivativeReduction {
  std::vector<Polynomial> a;
  std::vector<Polynomial> b;
};

DerivativeReduction derivative_reduction(const ModelParams& p, double energy, int max_order);

double evaluate(const Polynomial& poly, double t);

/// Scaled Wronskian of a set of solutions with its first two derivatives, all
/// sharing one log scale: W^{(j)} = exp(log_scale) * w[j].
template <typename Scalar>
struct WronskianSample {
  double log_scale = 0.0;
  Scalar w0{};
  Scalar w1{};
  Scalar w2{};

  /// (ln W)'' = W''/W - (W'/W)^2
  Scalar log_second_derivative() const {
    const Scalar r = w1 / w0;
    return w2 / w0 - r * r;
  }
};

/// Wronskian of `columns` (value/derivative samples at x) where column j
/// solves the base equation at energy `reductions[j]`.
template <typename Scalar>
WronskianSample<Scalar> wronskian(const std::vector<Scaled<Scalar>>& columns,
                                  const std::vector<const DerivativeReduction*>& reductions, double x) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int order = static_cast<int>(columns.size());
  WronskianSample<Scalar> out;
  if (order == 0) {
    out.w0 = Scalar(1);
    return out;
  }
  const double t = std::tanh(x);
  // rows[m](j): derivative m of column j, m = 0..order+1, columns normalised.
  Matrix rows(order + 2, order);
  for (int j = 0; j < order; ++j) {
    const auto& c = columns[static_cast<std::size_t>(j)];
    const auto& red = *reductions[static_cast<std::size_t>(j)];
    const double norm = std::max(std::abs(c.value), std::abs(c.derivative));
    const double inv = norm > 0.0 ? 1.0 / norm : 1.0;
    out.log_scale += c.log_scale + (norm > 0.0 ? std::log(norm) : 0.0);
    for (int m = 0; m < order + 2; ++m)
      rows(m, j) = (evaluate(red.a[static_cast<std::size_t>(m)], t) * c.value +
                    evaluate(red.b[static_cast<std::size_t>(m)], t) * c.derivative) * inv;
  }
  auto det_of = [&](const std::vector<int>& pick) {
    Matrix m(order, order);
    for (int i = 0; i < order; ++i) m.row(i) = rows.row(pick[static_cast<std::size_t>(i)]);
    return m.determinant();
  };
  std::vector<int> base(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) base[static_cast<std::size_t>(i)] = i;
  out.w0 = det_of(base);
  std::vector<int> last = base;
  last.back() = order;
  out.w1 = det_of(last);
  std::vector<int> top = base;
  top.back() = order + 1;
  out.w2 = det_of(top);
  if (order >= 2) {
    std::vector<int> mixed = base;
    mixed[static_cast<std::size_t>(order - 2)] = order - 1;
    mixed.back() = order;
    out.w2 += det_of(mixed);
  }
  return out;
}

/// W(x) = beta/(lambda - 1/2) + (lambda - 1/2) tanh x = -(ln phi^{1}_{lambda,0})'.
double superpotential(const ModelParams& p, double x, const Tolerances& tol = default_tolerances());
double superpotential_derivative(const ModelParams& p, double x, const Tolerances& tol = default_tolerances());

/// B^- = d/dx + W_lambda (annihilates the ground state), B^+ = -d/dx + W_lambda.
/// `sample` is a solution of H_lambda at `energy`; the result carries its own
/// derivative.
template <typename Scalar>
Scaled<Scalar> apply_b_minus(const ModelParams& p, const Scaled<Scalar>& sample, Scalar energy, double x,
                             const Tolerances& tol = default_tolerances()) {
  const double w = superpotential(p, x, tol);
  const double dw = superpotential_derivative(p, x, tol);
  const double v = model::potential(p, x);
  const Scalar second = (v - energy) * sample.value;
  return {sample.log_scale, sample.derivative + w * sample.value,
          second + dw * sample.value + w * sample.derivative};
}

template <typename Scalar>
Scaled<Scalar> apply_b_plus(const ModelParams& p, const Scaled<Scalar>& sample, Scalar energy, double x,
                            const Tolerances& tol = default_tolerances()) {
  const double w = superpotential(p, x, tol);
  const double dw = superpotential_derivative(p, x, tol);
  const double v = model::potential(p, x);
  const Scalar second = (v - energy) * sample.value;
  return {sample.log_scale, -sample.derivative + w * sample.value,
          -second + dw * sample.value + w * sample.derivative};
}

ScaledReal apply_b_minus(const ModelParams& p, const analytic::PoleEigenfunction& w, double x,
                         const Tolerances& tol = default_tolerances());
ScaledReal apply_b_plus(const ModelParams& p, const analytic::PoleEigenfunction& w, double x,
                        const Tolerances& tol = default_tolerances());

/// Checks the seed against the pole classification (kind, condition, index).
/// Throws PreconditionFailed on mismatch.
analytic::PoleEigenfunction seed_function(const ModelParams& p, const SeedSpec& seed,
                                          const Tolerances& tol = default_tolerances());

/// Node-count grid used to certify first-order seeds.
Grid seed_check_grid();

class PartnerPotential {
 public:
  PartnerPotential(SusyChain chain, const Tolerances& tol = default_tolerances());

  double operator()(double x) const;
  /// Underlying Wronskian of the seed set at x.
  WronskianSample<double> seed_wronskian(double x) const;

  const SusyChain& provenance() const { return chain_; }
  const std::vector<analytic::PoleEigenfunction>& seeds() const { return seeds_; }
  oracle::Potential evaluator() const;

  /// Throws WronskianZero if the seed Wronskian changes sign or vanishes on the grid.
  void check_regular(const Grid& grid) const;

 private:
  SusyChain chain_;
  Tolerances tol_;
  std::vector<analytic::PoleEigenfunction> seeds_;
  std::vector<DerivativeReduction> reductions_;
};

/// V - 2 (ln s)'' for one nodeless seed, written derivative-free as
/// -V + 2 E_s + 2 (s'/s)^2. Throws SeedHasNode for seeds with nodes.
PartnerPotential partner_potential_first_order(const ModelParams& p, const SeedSpec& seed,
                                               const Tolerances& tol = default_tolerances());

/// V - 2 (ln W(seeds))''. Throws WronskianZero when the seed Wronskian vanishes
/// on `check`.
PartnerPotential partner_potential_wronskian(const SusyChain& chain, const Grid& check = {-20.0, 20.0, 4001},
                                             const Tolerances& tol = default_tolerances());

/// W(seeds + {w}) / W(seeds) at x, with derivative.
ScaledReal transform_state_wronskian(const PartnerPotential& partner, const analytic::PoleEigenfunction& w,
                                     double x);
ScaledReal transform_state_wronskian(const SusyChain& chain, const analytic::PoleEigenfunction& w, double x,
                                     const Tolerances& tol = default_tolerances());

struct EquivalenceReport {
  double alpha = 0.0;
  double beta = 0.0;
  int big_n = 0;
  Grid grid;
  double max_discrepancy = 0.0;
  oracle::OracleSpectrum first_order_spectrum;
  oracle::OracleSpectrum wronskian_spectrum;
  std::vector<double> expected_energies;
  double spectrum_error = 0.0;
  bool passed = false;
};

/// Compares the anti-bound first-order transform of H_alpha (seed
/// phi^{2}_{alpha,N-1}) with the order N-1 transform of H_{alpha+N} deleting
/// levels 1..N-1, pointwise on `grid` and through their oracle spectra.
/// Throws PreconditionFailed for even N, N < 3, alpha outside
/// (1/2 + sqrt(beta), 3/2 + sqrt(beta)) or a seed with nodes.
EquivalenceReport verify_equivalence(double alpha, double beta, int big_n, const Grid& grid = {-10.0, 10.0, 2001},
                                     const Tolerances& tol = default_tolerances());

}  // namespace susy
}  // namespace rm2
