#include "rm2/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "rm2/error.hpp"

namespace rm2 {

std::string_view to_string(PoleClass cls) {
  switch (cls) {
    case PoleClass::Bound: return "bound";
    case PoleClass::Redundant: return "redundant";
    case PoleClass::AntiBound: return "anti-bound";
  }
  return "unknown";
}

std::string_view to_string(NodelessType type) {
  switch (type) {
    case NodelessType::I: return "I";
    case NodelessType::II: return "II";
    case NodelessType::III: return "III";
    case NodelessType::NotNodeless: return "not-nodeless";
  }
  return "unknown";
}

std::vector<PoleRecord> PoleTable::of(Condition condition, PoleClass cls) const {
  std::vector<PoleRecord> out;
  for (const auto& r : records)
    if (r.condition == condition && r.pole_class == cls) out.push_back(r);
  return out;
}

namespace spectrum {

namespace {

constexpr double kSignZero = 1e-12;

double signed_lambda(const ModelParams& p, Condition condition) {
  return condition == Condition::First ? p.lambda : -p.lambda;
}

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

}  // namespace

PoleClass class_from_signs(double mu, double nu, bool* boundary) {
  const double scale = std::max({1.0, std::abs(mu), std::abs(nu)});
  const bool mu_zero = std::abs(mu) <= kSignZero * scale;
  const bool nu_zero = std::abs(nu) <= kSignZero * scale;
  if (boundary) *boundary = mu_zero || nu_zero;
  if (mu_zero || nu_zero) return PoleClass::Redundant;
  if (mu > 0.0 && nu > 0.0) return PoleClass::Bound;
  if (mu < 0.0 && nu < 0.0) return PoleClass::AntiBound;
  return PoleClass::Redundant;
}

PoleClass class_from_ranges(const ModelParams& p, Condition condition, int n) {
  const double centre = signed_lambda(p, condition) - 0.5;
  const double root = std::sqrt(p.beta);
  const double lower = centre - root;
  const double upper = centre + root;
  const double slack = kSignZero * std::max(1.0, std::abs(centre) + root);
  if (n < lower - slack) return PoleClass::Bound;
  if (n > upper + slack) return PoleClass::AntiBound;
  return PoleClass::Redundant;
}

PoleRecord make_record(const ModelParams& p, Condition condition, int n, const Tolerances& tol) {
  const PoleExponents e = pole_exponents(p, condition, n, tol);
  PoleRecord r;
  r.condition = condition;
  r.n = n;
  r.exponent = e.exponent;
  r.energy = e.energy;
  r.mu = e.mu;
  r.nu = e.nu;
  r.pole_class = class_from_signs(e.mu, e.nu, &r.boundary_case);
  return r;
}

int bound_state_count(const ModelParams& p) {
  const double edge = p.lambda - 0.5 - std::sqrt(p.beta);
  if (edge <= 0.0) return 0;
  // n ranges over 0 <= n < edge.
  return is_integer(edge) ? static_cast<int>(std::round(edge)) : static_cast<int>(std::floor(edge)) + 1;
}

int n_max(const ModelParams& p) { return static_cast<int>(std::floor(p.lambda - 0.5 - std::sqrt(p.beta))); }

int n_r(const ModelParams& p) { return static_cast<int>(std::floor(p.lambda - 0.5 + std::sqrt(p.beta))); }

PoleTable classify_poles(const ModelParams& p, int n_cap, const Tolerances& tol) {
  validate(p);
  if (n_cap < 0) throw Error(ErrorCode::InvalidArgument, "n_cap must be non-negative");
  PoleTable table;
  table.params = p;
  table.n_cap = n_cap;
  for (Condition condition : {Condition::First, Condition::Second}) {
    for (int n = 0; n <= n_cap; ++n) {
      try {
        table.records.push_back(make_record(p, condition, n, tol));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ExponentSingularity) throw;
        table.singular.push_back({condition, n});
      }
    }
  }

  // The worked example with lambda = 5.4, beta = 1 is described in the
  // literature as having three redundant states; the index ranges give a
  // different number. Report both rather than choose.
  if (std::abs(p.lambda - 5.4) < 1e-12 && std::abs(p.beta - 1.0) < 1e-12) {
    int redundant = 0;
    for (const auto& r : table.records) redundant += r.pole_class == PoleClass::Redundant ? 1 : 0;
    std::ostringstream os;
    os << "redundant-count discrepancy: index ranges give " << redundant
       << " redundant poles (Condition 1: n = " << n_max(p) + 1 << ".." << n_r(p)
       << ", Condition 2: none), while the published prose for lambda=5.4, beta=1 states "
          "four bound states and three redundant states";
    table.notes.push_back(os.str());
  }
  return table;
}

NodelessType nodeless_class(const ModelParams& p, int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "nodeless index must be non-negative");
  const double a = p.lambda - 0.5;
  const double b = p.beta;
  if (a > m && a * (a - m) < b && b < a * a) return NodelessType::I;
  // III before II: where both hold, the condition-2 solution is the one reported.
  if (m % 2 == 0 && p.lambda > 0.5 - std::sqrt(b) && 0.0 < b && b < a * a) return NodelessType::III;
  if (0.5 * m < a && a < m && -a * (a - m) < b && b < a * a) return NodelessType::II;
  return NodelessType::NotNodeless;
}

bool is_nodeless_candidate(const ModelParams& p, Condition condition, int m) {
  const double a = p.lambda - 0.5;
  const double b = p.beta;
  if (condition == Condition::First) {
    const bool type_one = a > m && a * (a - m) < b && b < a * a;
    const bool type_two = 0.5 * m < a && a < m && -a * (a - m) < b && b < a * a;
    return type_one || type_two;
  }
  return m % 2 == 0 && p.lambda > 0.5 - std::sqrt(b) && 0.0 < b && b < a * a;
}

int count_nodes(const ScaledSampler& f, const Grid& grid) {
  if (grid.x_min > -15.0 || grid.x_max < 15.0 || grid.points < 4000)
    throw Error(ErrorCode::InvalidArgument, "node counting needs a grid covering [-15, 15] with >= 4000 points");
  Grid g = grid;
  for (int attempt = 0; attempt < 5; ++attempt) {
    int changes = 0;
    int bad = 0;
    int last_sign = 0;
    for (int i = 0; i < g.points; ++i) {
      const ScaledReal s = f(g.at(i));
      if (!std::isfinite(s.value) || !std::isfinite(s.log_scale)) {
        ++bad;
        continue;
      }
      const int sign = s.value > 0.0 ? 1 : (s.value < 0.0 ? -1 : 0);
      if (sign == 0) continue;
      if (last_sign != 0 && sign != last_sign) ++changes;
      last_sign = sign;
    }
    if (bad * 10 <= g.points) return changes;
    g.x_min *= 0.8;
    g.x_max *= 0.8;
  }
  throw Error(ErrorCode::ValueUnderflow, "wavefunction not representable over most of the grid");
}

}  // namespace spectrum
}  // namespace rm2
