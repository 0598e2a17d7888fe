#include <doctest.h>

#include <random>
#include <sstream>

#include "helpers.hpp"
#include "rm2/config.hpp"
#include "rm2/model.hpp"

using namespace rm2;

TEST_CASE("potential values and limits") {
  const ModelParams p{5.4, 1.0};
  CHECK(model::potential(p, 0.0) == doctest::Approx(-28.91).epsilon(1e-15));
  CHECK(std::abs(model::potential(p, 20.0) - 2.0) < 1e-15);
  CHECK(std::abs(model::potential(p, -20.0) + 2.0) < 1e-15);
  const ModelParams pt{3.0, 0.0};
  for (double x : {0.3, 1.7, 4.0}) CHECK(model::potential(pt, x) == model::potential(pt, -x));
}

TEST_CASE("beta flip mirrors the potential") {
  const ModelParams p{2.4, 1.3};
  for (int i = 0; i < 1000; ++i) {
    const double x = -10.0 + 0.02 * i;
    CHECK(std::abs(model::potential(p, -x) - model::potential_from_coefficient(p.well_coefficient(), -p.beta, x)) <
          1e-13);
  }
}

TEST_CASE("potential derivative matches a central difference") {
  const ModelParams p{3.1, 0.7};
  for (double x : {-2.0, 0.1, 1.5}) {
    const double h = 1e-5;
    const double fd = (model::potential(p, x + h) - model::potential(p, x - h)) / (2 * h);
    CHECK(std::abs(model::potential_derivative(p, x) - fd) < 1e-8);
  }
}

TEST_CASE("shape classification") {
  CHECK(model::classify_shape(28.91, 1.0) == PotentialShape::Well);
  CHECK(model::classify_shape(0.96, 10.0) == PotentialShape::Step);
  CHECK(model::classify_shape(-2.25, 1.0) == PotentialShape::Barrier);
  CHECK(testing::code_of([] { model::classify_shape(-0.5, 1.0); }) == ErrorCode::Unclassified);
}

TEST_CASE("parameter validation") {
  CHECK(testing::code_of([] { validate({-1.0, 1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(testing::code_of([] { validate({1.0, -0.1}); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(validate({0.5, 0.0}));
}

TEST_CASE("momenta") {
  const Momenta m = model::momenta_from_energy({5.4, 1.0}, 5.0);
  CHECK(std::abs(m.k - std::sqrt(7.0)) < 1e-15);
  CHECK(std::abs(m.k_prime - std::sqrt(3.0)) < 1e-15);
  const Momenta s = model::momenta_from_energy({2.0, 0.0}, -4.0);
  CHECK(std::abs(s.k - Complex(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(s.k_prime - Complex(0.0, 2.0)) < 1e-15);
  const Momenta b = model::momenta_from_energy({2.4, 1.0}, -3.8870083102493087);
  CHECK(std::abs(b.k.real()) < 1e-15);
  CHECK(b.k.imag() > 0.0);
  CHECK(b.k_prime.imag() > 0.0);
  CHECK(testing::code_of([] { model::momenta_from_energy({2.4, 1.0}, 2.0); }) == ErrorCode::BranchPoint);
  const Momenta flipped = model::momenta_on_sheet({2.4, 1.0}, 5.0, -1, 1);
  CHECK(std::abs(flipped.k + std::sqrt(7.0)) < 1e-15);
}

TEST_CASE("momenta reproduce energy and beta") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  const ModelParams p{3.3, 1.7};
  for (int i = 0; i < 100; ++i) {
    const Complex e(u(rng), u(rng));
    const Momenta m = model::momenta_from_energy(p, e);
    CHECK(testing::rel(m.energy(), e) < 1e-12);
    CHECK(std::abs(m.beta() - p.beta) < 1e-12 * p.beta);
  }
}

TEST_CASE("grid parsing") {
  const Grid g = parse_grid("-3:5:9");
  CHECK(g.x_min == -3.0);
  CHECK(g.x_max == 5.0);
  CHECK(g.points == 9);
  CHECK(g.at(8) == 5.0);
  CHECK(testing::code_of([] { parse_grid("1:2"); }) == ErrorCode::InvalidArgument);
  CHECK(testing::code_of([] { parse_grid("a:2:3"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("tolerance overrides") {
  Tolerances tol;
  std::istringstream in("# comment\n\nseries_max_terms = 77\nwronskian_zero=1e-200\n");
  apply_overrides(tol, in);
  CHECK(tol.series_max_terms == 77);
  CHECK(tol.wronskian_zero == 1e-200);
  CHECK(to_map(tol).at("series_max_terms") == 77.0);
  std::istringstream bad_key("no_such_key=1\n");
  CHECK(testing::code_of([&] { apply_overrides(tol, bad_key); }) == ErrorCode::InvalidArgument);
  std::istringstream bad_value("branch_point=abc\n");
  CHECK(testing::code_of([&] { apply_overrides(tol, bad_value); }) == ErrorCode::InvalidArgument);
  std::istringstream no_eq("branch_point 3\n");
  CHECK(testing::code_of([&] { apply_overrides(tol, no_eq); }) == ErrorCode::InvalidArgument);
}
