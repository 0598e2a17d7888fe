#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "rm2/analytic.hpp"
#include "rm2/spectrum.hpp"

using namespace rm2;

namespace {

int count_class(const PoleTable& t, Condition c, PoleClass k) { return static_cast<int>(t.of(c, k).size()); }

const Grid kNodeGrid{-15.0, 15.0, 6001};

int nodes_of(const ModelParams& p, Condition c, int n) {
  const analytic::PoleEigenfunction f(p, c, Family::Phi, n);
  return spectrum::count_nodes([&](double x) { return f(x); }, kNodeGrid);
}

}  // namespace

TEST_CASE("classification for a deep well") {
  const ModelParams p{5.4, 1.0};
  const PoleTable t = spectrum::classify_poles(p, 8);
  CHECK(count_class(t, Condition::First, PoleClass::Bound) == 4);
  CHECK(count_class(t, Condition::First, PoleClass::Redundant) == 2);
  CHECK(count_class(t, Condition::First, PoleClass::AntiBound) == 3);
  CHECK(count_class(t, Condition::Second, PoleClass::AntiBound) == 9);
  CHECK(spectrum::n_max(p) == 3);
  CHECK(spectrum::n_r(p) == 5);
  const bool flagged = std::any_of(t.notes.begin(), t.notes.end(),
                                   [](const std::string& s) { return s.find("discrepancy") != std::string::npos; });
  CHECK(flagged);
}

TEST_CASE("single bound state and its energy") {
  const ModelParams p{2.4, 1.0};
  const PoleTable t = spectrum::classify_poles(p, 4);
  const auto bound = t.of(Condition::First, PoleClass::Bound);
  REQUIRE(bound.size() == 1);
  CHECK(bound[0].energy == doctest::Approx(-3.61 - 1.0 / 3.61).epsilon(1e-14));
}

TEST_CASE("no bound states for a step") {
  const PoleTable t = spectrum::classify_poles({1.1, 10.0}, 4);
  CHECK(count_class(t, Condition::First, PoleClass::Bound) == 0);
  CHECK(count_class(t, Condition::Second, PoleClass::Bound) == 0);
  CHECK(spectrum::bound_state_count({1.1, 10.0}) == 0);
}

TEST_CASE("sign rule and range rule agree") {
  for (const ModelParams& p : {ModelParams{5.4, 1.0}, ModelParams{2.4, 1.0}, ModelParams{5.3, 4.0},
                               ModelParams{1.1, 10.0}, ModelParams{4.1, 1.0}, ModelParams{0.3, 2.0}}) {
    const PoleTable t = spectrum::classify_poles(p, 20);
    for (const PoleRecord& r : t.records) {
      CHECK(spectrum::class_from_signs(r.mu, r.nu) == spectrum::class_from_ranges(p, r.condition, r.n));
      CHECK(r.energy < 0.0);
      if (r.condition == Condition::Second) CHECK(r.pole_class != PoleClass::Bound);
    }
  }
}

TEST_CASE("bound count formula") {
  for (double lambda : {1.2, 2.4, 3.7, 5.4, 9.1})
    for (double beta : {0.0, 0.5, 1.0, 4.0}) {
      const ModelParams p{lambda, beta};
      const double edge = lambda - 0.5 - std::sqrt(beta);
      const int want = edge > 0.0 ? static_cast<int>(std::floor(edge)) + 1 : 0;
      if (std::abs(edge - std::round(edge)) < 1e-9) continue;
      CHECK(spectrum::bound_state_count(p) == want);
      CHECK(static_cast<int>(spectrum::classify_poles(p).of(Condition::First, PoleClass::Bound).size()) == want);
    }
}

TEST_CASE("no redundant poles without the step") {
  const PoleTable t = spectrum::classify_poles({4.3, 0.0}, 20);
  CHECK(count_class(t, Condition::First, PoleClass::Redundant) == 0);
  CHECK(count_class(t, Condition::Second, PoleClass::Redundant) == 0);
}

TEST_CASE("energy degeneracy between the conditions") {
  const double lambda = 7.3, beta = 1.4;
  const double c = lambda - 0.5;
  for (int n = 0; n <= 5; ++n) {
    const double e2 = pole_exponents({lambda - n - 1.0, beta}, Condition::Second, n).energy;
    const double e1 = pole_exponents({lambda + n, beta}, Condition::First, n).energy;
    CHECK(std::abs(e1 - e2) < 1e-12 * std::abs(e1));
    CHECK(std::abs(e1 + c * c + beta * beta / (c * c)) < 1e-12 * std::abs(e1));
  }
}

TEST_CASE("vanishing exponents are skipped and reported") {
  const PoleTable t = spectrum::classify_poles({2.5, 1.0}, 6);
  REQUIRE(t.singular.size() == 1);
  CHECK(t.singular[0].n == 2);
  CHECK(t.singular[0].condition == Condition::First);
}

TEST_CASE("nodeless types") {
  CHECK(spectrum::nodeless_class({5.4, 6.0}, 4) == NodelessType::I);
  CHECK(spectrum::nodeless_class({2.4, 1.0}, 2) == NodelessType::III);
  CHECK(spectrum::nodeless_class({2.4, 1.0}, 1) == NodelessType::NotNodeless);
  CHECK(spectrum::is_nodeless_candidate({2.4, 1.0}, Condition::Second, 2));
  // The type II conditions also hold here and phi{1}_{2.4,2} is nodeless too.
  CHECK(spectrum::is_nodeless_candidate({2.4, 1.0}, Condition::First, 2));
}

TEST_CASE("node counts") {
  CHECK(nodes_of({5.4, 1.0}, Condition::First, 0) == 0);
  CHECK(nodes_of({5.4, 1.0}, Condition::First, 1) == 1);
  CHECK(nodes_of({5.4, 1.0}, Condition::First, 3) == 3);
  CHECK(nodes_of({2.4, 1.0}, Condition::Second, 2) == 0);
  CHECK(nodes_of({5.4, 6.0}, Condition::First, 4) == 0);
  CHECK(testing::code_of([] { spectrum::count_nodes([](double) { return ScaledReal{0, 1, 0}; }, {-5, 5, 100}); }) ==
        ErrorCode::InvalidArgument);
}
