#include "rm2/model.hpp"

#include <cmath>
#include <sstream>

#include "rm2/error.hpp"

namespace rm2 {

void validate(const ModelParams& p) {
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
    throw Error(ErrorCode::InvalidArgument, "lambda must be positive, got " + std::to_string(p.lambda));
  if (!(p.beta >= 0.0) || !std::isfinite(p.beta))
    throw Error(ErrorCode::InvalidArgument, "beta must be non-negative, got " + std::to_string(p.beta));
}

std::string_view to_string(PotentialShape shape) {
  switch (shape) {
    case PotentialShape::Well: return "well";
    case PotentialShape::Step: return "step";
    case PotentialShape::Barrier: return "barrier";
  }
  return "unknown";
}

Grid parse_grid(const std::string& text) {
  std::istringstream is(text);
  Grid g;
  char c1 = 0;
  char c2 = 0;
  if (!(is >> g.x_min >> c1 >> g.x_max >> c2 >> g.points) || c1 != ':' || c2 != ':' || !(is >> std::ws).eof())
    throw Error(ErrorCode::InvalidArgument, "grid must be x_min:x_max:points, got '" + text + "'");
  if (g.points < 2 || !(g.x_max > g.x_min))
    throw Error(ErrorCode::InvalidArgument, "grid needs x_max > x_min and at least 2 points");
  return g;
}

namespace model {

double potential_from_coefficient(double well_coefficient, double beta, double x) {
  const double sech = 1.0 / std::cosh(x);
  return -well_coefficient * sech * sech + 2.0 * beta * std::tanh(x);
}

double potential(const ModelParams& p, double x) { return potential_from_coefficient(p.well_coefficient(), p.beta, x); }

double potential_derivative(const ModelParams& p, double x) {
  const double t = std::tanh(x);
  const double sech2 = 1.0 - t * t;
  return 2.0 * p.well_coefficient() * sech2 * t + 2.0 * p.beta * sech2;
}

PotentialShape classify_shape(double well_coefficient, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "shape classification needs beta > 0");
  if (beta < well_coefficient) return PotentialShape::Well;
  if (well_coefficient > 0.0 && well_coefficient < beta) return PotentialShape::Step;
  if (well_coefficient < 0.0 && -well_coefficient > beta) return PotentialShape::Barrier;
  std::ostringstream os;
  os << "coefficient " << well_coefficient << " with beta " << beta << " matches no shape";
  throw Error(ErrorCode::Unclassified, os.str());
}

namespace {

Complex principal_sqrt(Complex w) {
  // Normalise signed zeros so that the negative real axis maps to +i.
  if (w.imag() == 0.0) w = Complex(w.real(), 0.0);
  Complex r = std::sqrt(w);
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

}  // namespace

Momenta momenta_from_energy(const ModelParams& p, Complex energy, const Tolerances& tol) {
  const Complex left = energy + 2.0 * p.beta;
  const Complex right = energy - 2.0 * p.beta;
  if (std::abs(left) < tol.branch_point || std::abs(right) < tol.branch_point)
    throw Error(ErrorCode::BranchPoint, "energy at a channel threshold");
  return {principal_sqrt(left), principal_sqrt(right)};
}

Momenta momenta_on_sheet(const ModelParams& p, Complex energy, int sign_k, int sign_k_prime, const Tolerances& tol) {
  Momenta m = momenta_from_energy(p, energy, tol);
  m.k *= static_cast<double>(sign_k >= 0 ? 1 : -1);
  m.k_prime *= static_cast<double>(sign_k_prime >= 0 ? 1 : -1);
  return m;
}

}  // namespace model
}  // namespace rm2
