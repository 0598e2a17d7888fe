#include <doctest.h>

#include "helpers.hpp"
#include "precise.hpp"
#include "rm2/analytic.hpp"
#include "rm2/model.hpp"
#include "rm2/specfun.hpp"
#include "rm2/spectrum.hpp"

using namespace rm2;
using analytic::GeneralFamily;
using analytic::PoleEigenfunction;

namespace {

std::function<double(double)> potential_of(const ModelParams& p) {
  return [p](double x) { return model::potential(p, x); };
}

Complex wronskian(const ScaledComplex& f, const ScaledComplex& g) {
  return std::exp(f.log_scale + g.log_scale) * (f.value * g.derivative - f.derivative * g.value);
}

}  // namespace

TEST_CASE("ground pole function is the bare prefactor") {
  const ModelParams p{5.4, 1.0};
  const PoleEigenfunction f(p, Condition::First, Family::Phi, 0);
  const double d = 4.9;
  for (double x : {-3.0, 0.0, 2.5}) {
    const double want = std::exp(-p.beta * x / d) * std::pow(1.0 / std::cosh(x), d);
    CHECK(testing::rel(f(x).actual(), want) < 1e-13);
  }
  CHECK(f.energy() == doctest::Approx(-(d * d + p.beta * p.beta / (d * d))).epsilon(1e-14));
}

TEST_CASE("second-condition functions are the lambda -> -lambda image") {
  const ModelParams p{2.4, 1.0};
  for (int n = 0; n <= 3; ++n) {
    const PoleEigenfunction f(p, Condition::Second, Family::Phi, n);
    const double d = -p.lambda - 0.5 - n;
    const PoleExponents e = pole_exponents(p, Condition::Second, n);
    CHECK(e.exponent == doctest::Approx(d));
    for (double x : {-1.5, 0.4, 2.0}) {
      const double want = std::exp(-p.beta * x / d) * std::pow(1.0 / std::cosh(x), d) *
                          specfun::jacobi_p({n, e.mu, e.nu, std::tanh(x)});
      CHECK(testing::rel(f(x).actual(), want) < 1e-12);
    }
  }
}

TEST_CASE("a vanishing exponent is rejected") {
  CHECK(testing::code_of([] { PoleEigenfunction({2.5, 1.0}, Condition::First, Family::Phi, 2); }) ==
        ErrorCode::ExponentSingularity);
}

TEST_CASE("pole functions solve the equation") {
  for (const ModelParams& p : {ModelParams{2.4, 1.0}, ModelParams{5.3, 4.0}}) {
    const int top = spectrum::n_r(p) + 3;
    for (Condition c : {Condition::First, Condition::Second})
      for (Family fam : {Family::Phi, Family::Psi})
        for (int n = 0; n <= top; ++n) {
          if (c == Condition::First && std::abs(p.lambda - 0.5 - n) < 1e-9) continue;
          const PoleEigenfunction f(p, c, fam, n);
          CHECK(testing::ode_residual(f, potential_of(p), f.energy(), -6.0, 6.0, 25) < 1e-8);
        }
  }
}

TEST_CASE("general solutions have a constant Wronskian") {
  const ModelParams p{2.4, 1.0};
  const Complex e(5.0, 0.0);
  Complex w0;
  for (double x : {-5.0, 0.0, 5.0}) {
    const Complex w = wronskian(analytic::eval_general(p, e, GeneralFamily::Psi, x),
                                analytic::eval_general(p, e, GeneralFamily::Phi, x));
    if (x == -5.0) w0 = w;
    CHECK(testing::rel(w, w0) < 1e-9);
  }
  CHECK(std::abs(w0) > 1e-3);
}

TEST_CASE("general psi is a left plane wave") {
  const ModelParams p{2.4, 1.0};
  const Complex e(5.0, 0.0);
  const Momenta m = model::momenta_from_energy(p, e);
  const Complex amplitude = std::pow(Complex(2.0, 0.0), Complex(0.0, 0.5) * (m.k + m.k_prime));
  for (double x : {-18.0, -19.0}) {
    const Complex f = analytic::eval_general(p, e, GeneralFamily::Psi, x).actual();
    CHECK(testing::rel(f, amplitude * std::exp(Complex(0.0, 1.0) * m.k * x)) < 1e-8);
  }
}

TEST_CASE("general phi is proportional to the bound eigenfunction at a pole") {
  const ModelParams p{5.4, 1.0};
  const PoleEigenfunction f(p, Condition::First, Family::Phi, 1);
  Complex first;
  for (double x = -6.0; x <= 6.0; x += 0.5) {
    const ScaledComplex g = analytic::eval_general(p, Complex(f.energy(), 0.0), GeneralFamily::Phi, x);
    const ScaledReal b = f(x);
    if (std::abs(b.value) < 1e-3 * std::abs(b.derivative)) continue;
    const Complex r = std::exp(g.log_scale - b.log_scale) * g.value / b.value;
    if (x == -6.0) first = r;
    CHECK(testing::rel(r, first) < 1e-7);
  }
}

TEST_CASE("bound ground state is square integrable") {
  const PoleEigenfunction f({2.4, 1.0}, Condition::First, Family::Phi, 0);
  double total = 0.0, tail = 0.0;
  const double h = 0.01;
  for (double x = -30.0; x <= 30.0; x += h) {
    const double v = f(x).actual();
    total += v * v * h;
    if (std::abs(x) > 20.0) tail += v * v * h;
  }
  CHECK(tail < 1e-8 * total);
}

TEST_CASE("far-field samples stay representable") {
  const PoleEigenfunction f({5.4, 1.0}, Condition::First, Family::Phi, 2);
  const ScaledReal s = f(60.0);
  CHECK(std::isfinite(s.value));
  CHECK(std::isfinite(s.log_scale));
  // far below the smallest double: -beta x / d + d log sech x with d = 2.9
  CHECK(s.log_scale == doctest::Approx(-60.0 / 2.9 + 2.9 * (kLn2 - 60.0)).epsilon(1e-12));
}

TEST_CASE("double evaluation of psi agrees with the extended-precision oracle") {
  const PoleEigenfunction f({4.4, 1.0}, Condition::Second, Family::Psi, 0);
  for (double x = -4.0; x <= 4.0; x += 0.5) {
    const precise::Sample s = precise::psi(f, x);
    const ScaledReal d = f(x);
    CHECK(testing::rel(d.actual(), s.value.convert_to<double>()) < 1e-12);
    CHECK(testing::rel(d.actual_derivative(), s.derivative.convert_to<double>()) < 1e-11);
  }
}
