#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rm2/model.hpp"
#include "rm2/oracle.hpp"

using namespace rm2;

TEST_CASE("textbook sech^2 well") {
  // -l(l+1) sech^2 x has levels -(l - n)^2, n < l.
  const double l = 3.5;
  const auto spec = oracle::bound_states([&](double x) { return -l * (l + 1) / std::pow(std::cosh(x), 2); }, 0.0);
  REQUIRE(spec.size() == 4);
  for (int n = 0; n < 4; ++n) {
    CHECK(std::abs(spec.energies[static_cast<std::size_t>(n)] + (l - n) * (l - n)) < 1e-6);
    CHECK(spec.node_counts[static_cast<std::size_t>(n)] == n);
  }
}

TEST_CASE("square well by shooting") {
  // Finite square well of depth 10 and half width 1. The even ground state
  // solves sqrt(10 + E) tan(sqrt(10 + E)) = sqrt(-E), E = -8.592785275229682.
  // The jump in V drops Numerov to first order, so check the convergence rate.
  const double exact = -8.592785275229682;
  auto ground_error = [&](int points) {
    const auto spec = oracle::bound_states([](double x) { return std::abs(x) < 1.0 ? -10.0 : 0.0; }, 0.0,
                                           {25.0, points});
    REQUIRE(spec.size() == 3);
    CHECK(spec.node_counts == std::vector<int>{0, 1, 2});
    return std::abs(spec.energies[0] - exact);
  };
  const double coarse = ground_error(20001);
  const double fine = ground_error(40001);
  CHECK(fine < 2e-3);
  CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("stepped asymptotes") {
  const ModelParams p{5.4, 1.0};
  const auto spec = oracle::bound_states([p](double x) { return model::potential(p, x); }, p.beta);
  CHECK(spec.size() == 4);
  for (double e : spec.energies) CHECK(e < -2.0 * p.beta);
}

TEST_CASE("domain widens for a level near threshold") {
  // Bound level with kappa ~ 0.1: needs |x| up to ~180 before it has decayed.
  const ModelParams p{1.6, 1.0};
  const auto spec = oracle::bound_states([p](double x) { return model::potential(p, x); }, p.beta);
  REQUIRE(spec.size() == 1);
  const double d = 1.1;
  CHECK(std::abs(spec.energies[0] + d * d + 1.0 / (d * d)) < 1e-5);
}

TEST_CASE("too deep for the grid") {
  CHECK(testing::code_of([] { oracle::bound_states([](double x) { return -1e7 / std::pow(std::cosh(x), 2); }, 0.0, {25.0, 101}); }) ==
        ErrorCode::StiffIntegration);
}

TEST_CASE("square integrability probe") {
  const auto decaying = oracle::integrate_norm([](double x) { return ScaledReal{-x * x, 1.0, 0.0}; });
  CHECK_FALSE(decaying.divergent);
  CHECK(std::abs(decaying.log_norm - std::log(std::sqrt(kPi / 2.0))) < 1e-8);
  const auto growing = oracle::integrate_norm([](double x) { return ScaledReal{0.3 * std::abs(x), 1.0, 0.0}; });
  CHECK(growing.divergent);
}
