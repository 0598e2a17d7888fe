#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rm2/model.hpp"
#include "rm2/oracle.hpp"
#include "rm2/susy.hpp"

using namespace rm2;
using analytic::PoleEigenfunction;

namespace {

oracle::OracleSpectrum spectrum_of(const ModelParams& p) {
  return oracle::bound_states([p](double x) { return model::potential(p, x); }, p.beta);
}

double sup_difference(const std::function<double(double)>& f, const std::function<double(double)>& g, double lo,
                      double hi, int points) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    worst = std::max(worst, std::abs(f(x) - g(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("superpotential") {
  const ModelParams p{5.4, 1.0};
  CHECK(susy::superpotential(p, 0.0) == doctest::Approx(1.0 / 4.9));
  CHECK(susy::superpotential(p, 1.0) == doctest::Approx(1.0 / 4.9 + 4.9 * std::tanh(1.0)).epsilon(1e-15));
  CHECK(std::abs(susy::superpotential(p, 40.0) - (1.0 / 4.9 + 4.9)) < 1e-12);
  const PoleEigenfunction g(p, Condition::First, Family::Phi, 0);
  for (double x : {-3.0, 0.5, 2.0}) CHECK(std::abs(susy::superpotential(p, x) + g(x).log_derivative()) < 1e-10);
  CHECK(testing::code_of([] { susy::superpotential({0.5, 1.0}, 0.3); }) == ErrorCode::ExponentSingularity);
}

TEST_CASE("factorisation on random smooth functions") {
  const ModelParams p{5.4, 1.0};
  const double e0 = pole_exponents(p, Condition::First, 0).energy;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    // f = exp(-a (x - c)^2) (1 + b x)
    const double a = 0.3 + 0.2 * (u(rng) + 1.0), b = u(rng), c = 2.0 * u(rng);
    for (double x = -6.0; x <= 6.0; x += 0.25) {
      const double g = std::exp(-a * (x - c) * (x - c));
      const double gp = -2.0 * a * (x - c) * g;
      const double gpp = (4.0 * a * a * (x - c) * (x - c) - 2.0 * a) * g;
      const double f = g * (1 + b * x), fp = gp * (1 + b * x) + b * g, fpp = gpp * (1 + b * x) + 2.0 * b * gp;
      const double w = susy::superpotential(p, x), dw = susy::superpotential_derivative(p, x);
      const double bm = fp + w * f;
      const double bm_d = fpp + dw * f + w * fp;
      const double factorised = -bm_d + w * bm + e0 * f;
      const double direct = -fpp + model::potential(p, x) * f;
      CHECK(std::abs(factorised - direct) < 1e-7 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("ground-state annihilation and mapping") {
  const ModelParams p{5.4, 1.0};
  const ModelParams lower{4.4, 1.0};
  const PoleEigenfunction g(p, Condition::First, Family::Phi, 0);
  for (double x = -6.0; x <= 6.0; x += 0.5) {
    const ScaledReal s = g(x);
    CHECK(std::abs(susy::apply_b_minus(p, g, x).value) < 1e-10 * std::abs(s.value));
  }
  for (int n = 1; n <= 2; ++n) {
    const PoleEigenfunction w(p, Condition::First, Family::Phi, n);
    const PoleEigenfunction t(lower, Condition::First, Family::Phi, n - 1);
    double lo = 1e300, hi = -1e300;
    for (double x = -6.0; x <= 6.0; x += 0.5) {
      const ScaledReal tv = t(x);
      if (std::abs(tv.value) < 1e-3 * std::abs(tv.derivative)) continue;
      const double r = ratio(susy::apply_b_minus(p, w, x), tv);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CHECK((hi - lo) / std::max(std::abs(lo), std::abs(hi)) < 1e-7);
  }
}

TEST_CASE("shape invariance") {
  const ModelParams p{5.4, 1.0};
  const auto partner = susy::partner_potential_first_order(p, {SeedKind::GroundState, Condition::First, 0});
  const ModelParams lower{4.4, 1.0};
  CHECK(sup_difference(partner, [&](double x) { return model::potential(lower, x); }, -10, 10, 2001) < 1e-9);
  const SusyChain chain{p, {{SeedKind::GroundState, Condition::First, 0}}};
  const auto w = susy::partner_potential_wronskian(chain);
  CHECK(sup_difference(partner, w, -10, 10, 2001) < 1e-12);
}

TEST_CASE("two-level deletion leaves two bound states") {
  const ModelParams p{5.4, 1.0};
  const SusyChain chain{p, {{SeedKind::Bound, Condition::First, 1}, {SeedKind::Bound, Condition::First, 2}}};
  const auto partner = susy::partner_potential_wronskian(chain);
  const auto spec = oracle::bound_states(partner.evaluator(), p.beta);
  REQUIRE(spec.size() == 2);
  CHECK(std::abs(spec.energies[0] - pole_exponents(p, Condition::First, 0).energy) < 1e-5);
  CHECK(std::abs(spec.energies[1] - pole_exponents(p, Condition::First, 3).energy) < 1e-5);

  // The surviving ground state maps to the partner's ground state.
  const PoleEigenfunction g(p, Condition::First, Family::Phi, 0);
  const auto image = [&](double x) { return susy::transform_state_wronskian(partner, g, x); };
  const auto v = [&](double x) { return partner(x); };
  CHECK(testing::ode_residual(image, v, g.energy(), -6.0, 6.0, 49) < 1e-7);
  // A chain member maps to zero.
  const PoleEigenfunction member(p, Condition::First, Family::Phi, 1);
  for (double x : {-2.0, 0.0, 3.0}) {
    const ScaledReal z = susy::transform_state_wronskian(partner, member, x);
    CHECK(std::abs(z.value) < 1e-9 * std::max(1.0, std::abs(z.derivative)));
  }
}

TEST_CASE("seed kinds and their spectral effect") {
  SUBCASE("redundant seed is isospectral") {
    const ModelParams p{5.3, 4.0};
    const auto partner = susy::partner_potential_first_order(p, {SeedKind::Redundant, Condition::First, 4});
    const auto a = spectrum_of(p);
    const auto b = oracle::bound_states(partner.evaluator(), p.beta);
    REQUIRE(a.size() == 3);
    REQUIRE(b.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.energies[i] - b.energies[i]) < 1e-5);
  }
  SUBCASE("anti-bound seed adds a level") {
    const ModelParams p{2.4, 1.0};
    const auto partner = susy::partner_potential_first_order(p, {SeedKind::AntiBound, Condition::Second, 2});
    const auto b = oracle::bound_states(partner.evaluator(), p.beta);
    REQUIRE(b.size() == 2);
    CHECK(std::abs(b.energies[0] - -24.0517) < 1e-4);
    const auto& seed = partner.seeds().front();
    const auto norm = oracle::integrate_norm([&](double x) {
      const ScaledReal s = seed(x);
      return ScaledReal{-s.log_scale, 1.0 / s.value, 0.0};
    });
    CHECK_FALSE(norm.divergent);
  }
  SUBCASE("seeds with nodes are refused") {
    CHECK(testing::code_of([] {
            susy::partner_potential_first_order({2.4, 1.0}, {SeedKind::AntiBound, Condition::Second, 1});
          }) == ErrorCode::SeedHasNode);
    CHECK(testing::code_of([] {
            susy::partner_potential_first_order({5.4, 1.0}, {SeedKind::Bound, Condition::First, 1});
          }) == ErrorCode::SeedHasNode);
  }
  SUBCASE("seed classes are checked") {
    CHECK(testing::code_of([] { susy::seed_function({5.4, 1.0}, {SeedKind::Redundant, Condition::First, 1}); }) ==
          ErrorCode::PreconditionFailed);
    CHECK(testing::code_of([] { susy::seed_function({1.1, 10.0}, {SeedKind::GroundState, Condition::First, 0}); }) ==
          ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("Wronskian with a sign change is refused") {
  // Ground and second excited states: W changes sign.
  const SusyChain chain{{5.4, 1.0}, {{SeedKind::GroundState, Condition::First, 0}, {SeedKind::Bound, Condition::First, 2}}};
  CHECK(testing::code_of([&] { susy::partner_potential_wronskian(chain); }) == ErrorCode::WronskianZero);
}

TEST_CASE("equivalence of the two constructions") {
  const auto rep = susy::verify_equivalence(2.4, 1.0, 3);
  CHECK(rep.passed);
  CHECK(rep.max_discrepancy < 1e-7);
  REQUIRE(rep.first_order_spectrum.size() == 2);
  CHECK(std::abs(rep.first_order_spectrum.energies[0] - -24.0517) < 1e-4);
  CHECK(std::abs(rep.first_order_spectrum.energies[1] - -3.88701) < 1e-4);
  CHECK(testing::code_of([] { susy::verify_equivalence(2.4, 1.0, 2); }) == ErrorCode::PreconditionFailed);
  CHECK(testing::code_of([] { susy::verify_equivalence(3.2, 1.0, 3); }) == ErrorCode::PreconditionFailed);
  try {
    susy::verify_equivalence(2.4, 1.0, 2);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }
}
