#include "rm2/susy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rm2/error.hpp"

namespace rm2 {

std::string_view to_string(SeedKind kind) {
  switch (kind) {
    case SeedKind::GroundState: return "ground";
    case SeedKind::Bound: return "bound";
    case SeedKind::Redundant: return "redundant";
    case SeedKind::AntiBound: return "antibound";
  }
  return "?";
}

namespace susy {

namespace {

Polynomial add(const Polynomial& a, const Polynomial& b) {
  Polynomial out = Polynomial::Zero(std::max(a.size(), b.size()));
  out.head(a.size()) += a;
  out.head(b.size()) += b;
  return out;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.size() == 0 || b.size() == 0) return Polynomial::Zero(1);
  Polynomial out = Polynomial::Zero(a.size() + b.size() - 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i, b.size()) += a(i) * b;
  return out;
}

// D p = (1 - t^2) dp/dt, i.e. d/dx of p(tanh x).
Polynomial d_dx(const Polynomial& p) {
  if (p.size() <= 1) return Polynomial::Zero(1);
  Polynomial dp(p.size() - 1);
  for (Eigen::Index i = 1; i < p.size(); ++i) dp(i - 1) = static_cast<double>(i) * p(i);
  Polynomial sech2(3);
  sech2 << 1.0, 0.0, -1.0;
  return multiply(sech2, dp);
}

std::string seed_label(const SeedSpec& seed, double lambda) {
  std::ostringstream os;
  os << "phi{" << static_cast<int>(seed.condition) << "}_{" << lambda << "," << seed.n << "}";
  return os.str();
}

}  // namespace

double evaluate(const Polynomial& poly, double t) {
  double acc = 0.0;
  for (Eigen::Index i = poly.size(); i-- > 0;) acc = acc * t + poly(i);
  return acc;
}

DerivativeReduction derivative_reduction(const ModelParams& p, double energy, int max_order) {
  const double c = p.well_coefficient();
  Polynomial v_minus_e(3);
  v_minus_e << -c - energy, 2.0 * p.beta, c;
  DerivativeReduction r;
  r.a.push_back(Polynomial::Constant(1, 1.0));
  r.b.push_back(Polynomial::Zero(1));
  if (max_order >= 1) {
    r.a.push_back(Polynomial::Zero(1));
    r.b.push_back(Polynomial::Constant(1, 1.0));
  }
  for (int m = 1; m < max_order; ++m) {
    const Polynomial& a = r.a.back();
    const Polynomial& b = r.b.back();
    Polynomial a_next = add(d_dx(a), multiply(b, v_minus_e));
    Polynomial b_next = add(a, d_dx(b));
    r.a.push_back(std::move(a_next));
    r.b.push_back(std::move(b_next));
  }
  return r;
}

double superpotential(const ModelParams& p, double x, const Tolerances& tol) {
  const double d = p.lambda - 0.5;
  if (std::abs(d) < tol.exponent_singularity)
    throw Error(ErrorCode::ExponentSingularity, "superpotential needs lambda != 1/2");
  return p.beta / d + d * std::tanh(x);
}

double superpotential_derivative(const ModelParams& p, double x, const Tolerances& tol) {
  const double d = p.lambda - 0.5;
  if (std::abs(d) < tol.exponent_singularity)
    throw Error(ErrorCode::ExponentSingularity, "superpotential needs lambda != 1/2");
  const double t = std::tanh(x);
  return d * (1.0 - t * t);
}

ScaledReal apply_b_minus(const ModelParams& p, const analytic::PoleEigenfunction& w, double x, const Tolerances& tol) {
  return apply_b_minus(p, w(x), w.energy(), x, tol);
}

ScaledReal apply_b_plus(const ModelParams& p, const analytic::PoleEigenfunction& w, double x, const Tolerances& tol) {
  return apply_b_plus(p, w(x), w.energy(), x, tol);
}

analytic::PoleEigenfunction seed_function(const ModelParams& p, const SeedSpec& seed, const Tolerances& tol) {
  if (seed.n < 0) throw Error(ErrorCode::InvalidArgument, "seed index must be non-negative");
  const PoleRecord rec = spectrum::make_record(p, seed.condition, seed.n, tol);
  const std::string label = seed_label(seed, p.lambda);
  auto refuse = [&](const std::string& why) {
    throw Error(ErrorCode::PreconditionFailed, label + " cannot serve as a " + std::string(to_string(seed.kind)) +
                                                   " seed: " + why);
  };
  switch (seed.kind) {
    case SeedKind::GroundState:
      if (seed.condition != Condition::First || seed.n != 0) refuse("ground-state seeds are phi{1}_{lambda,0}");
      if (rec.pole_class != PoleClass::Bound) refuse("no bound state exists");
      break;
    case SeedKind::Bound:
      if (rec.pole_class != PoleClass::Bound) refuse("pole is " + std::string(to_string(rec.pole_class)));
      break;
    case SeedKind::Redundant:
      if (rec.pole_class != PoleClass::Redundant) refuse("pole is " + std::string(to_string(rec.pole_class)));
      break;
    case SeedKind::AntiBound:
      if (rec.pole_class != PoleClass::AntiBound) refuse("pole is " + std::string(to_string(rec.pole_class)));
      break;
  }
  return analytic::PoleEigenfunction(p, seed.condition, Family::Phi, seed.n, tol);
}

Grid seed_check_grid() { return {-20.0, 20.0, 8001}; }

PartnerPotential::PartnerPotential(SusyChain chain, const Tolerances& tol) : chain_(std::move(chain)), tol_(tol) {
  validate(chain_.base);
  if (chain_.seeds.empty()) throw Error(ErrorCode::InvalidArgument, "a SUSY chain needs at least one seed");
  const int order = chain_.order();
  for (const auto& seed : chain_.seeds) {
    seeds_.push_back(seed_function(chain_.base, seed, tol_));
    reductions_.push_back(derivative_reduction(chain_.base, seeds_.back().energy(), order + 1));
  }
  for (std::size_t i = 0; i < seeds_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(seeds_[i].energy() - seeds_[j].energy()) <= 1e-12 * std::max(1.0, std::abs(seeds_[i].energy())))
        throw Error(ErrorCode::WronskianZero, "seeds share an energy; confluent chains are not supported");
}

WronskianSample<double> PartnerPotential::seed_wronskian(double x) const {
  std::vector<ScaledReal> columns;
  std::vector<const DerivativeReduction*> reds;
  columns.reserve(seeds_.size());
  for (std::size_t j = 0; j < seeds_.size(); ++j) {
    columns.push_back(seeds_[j](x));
    reds.push_back(&reductions_[j]);
  }
  return wronskian(columns, reds, x);
}

double PartnerPotential::operator()(double x) const {
  const WronskianSample<double> w = seed_wronskian(x);
  if (!(std::abs(w.w0) > tol_.wronskian_zero) || !std::isfinite(w.w0)) {
    std::ostringstream os;
    os << "seed Wronskian vanishes at x = " << x;
    throw Error(ErrorCode::WronskianZero, os.str());
  }
  return model::potential(chain_.base, x) - 2.0 * w.log_second_derivative();
}

oracle::Potential PartnerPotential::evaluator() const {
  return [self = *this](double x) { return self(x); };
}

void PartnerPotential::check_regular(const Grid& grid) const {
  double previous = 0.0;
  double previous_x = grid.x_min;
  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.at(i);
    const double w = seed_wronskian(x).w0;
    if (!(std::abs(w) > tol_.wronskian_zero) || !std::isfinite(w)) {
      std::ostringstream os;
      os << "seed Wronskian vanishes at x = " << x;
      throw Error(ErrorCode::WronskianZero, os.str());
    }
    if (i > 0 && (w < 0.0) != (previous < 0.0)) {
      std::ostringstream os;
      os << "seed Wronskian changes sign between x = " << previous_x << " and x = " << x;
      throw Error(ErrorCode::WronskianZero, os.str());
    }
    previous = w;
    previous_x = x;
  }
}

PartnerPotential partner_potential_first_order(const ModelParams& p, const SeedSpec& seed, const Tolerances& tol) {
  const analytic::PoleEigenfunction s = seed_function(p, seed, tol);
  const std::string label = seed_label(seed, p.lambda);
  const int nodes = spectrum::count_nodes([&](double x) { return s(x); }, seed_check_grid());
  if (nodes > 0)
    throw Error(ErrorCode::SeedHasNode, label + " has " + std::to_string(nodes) + " node(s); transform refused");
  if ((seed.kind == SeedKind::Redundant || seed.kind == SeedKind::AntiBound) &&
      !spectrum::is_nodeless_candidate(p, seed.condition, seed.n))
    throw Error(ErrorCode::SeedHasNode, label + " is not covered by a nodeless type (" +
                                            std::string(to_string(spectrum::nodeless_class(p, seed.n))) + ")");
  return PartnerPotential(SusyChain{p, {seed}}, tol);
}

PartnerPotential partner_potential_wronskian(const SusyChain& chain, const Grid& check, const Tolerances& tol) {
  PartnerPotential partner(chain, tol);
  partner.check_regular(check);
  return partner;
}

ScaledReal transform_state_wronskian(const PartnerPotential& partner, const analytic::PoleEigenfunction& w, double x) {
  const auto& seeds = partner.seeds();
  const ModelParams& p = partner.provenance().base;
  const int order = static_cast<int>(seeds.size()) + 1;
  std::vector<DerivativeReduction> reds;
  std::vector<ScaledReal> columns;
  for (const auto& s : seeds) {
    reds.push_back(derivative_reduction(p, s.energy(), order + 1));
    columns.push_back(s(x));
  }
  reds.push_back(derivative_reduction(p, w.energy(), order + 1));
  columns.push_back(w(x));
  std::vector<const DerivativeReduction*> ptrs;
  for (const auto& r : reds) ptrs.push_back(&r);

  const WronskianSample<double> extended = wronskian(columns, ptrs, x);
  const WronskianSample<double> base = partner.seed_wronskian(x);
  if (base.w0 == 0.0 || !std::isfinite(base.w0)) {
    std::ostringstream os;
    os << "seed Wronskian vanishes at x = " << x;
    throw Error(ErrorCode::WronskianZero, os.str());
  }
  ScaledReal out;
  out.log_scale = extended.log_scale - base.log_scale;
  out.value = extended.w0 / base.w0;
  out.derivative = (extended.w1 * base.w0 - extended.w0 * base.w1) / (base.w0 * base.w0);
  return out;
}

ScaledReal transform_state_wronskian(const SusyChain& chain, const analytic::PoleEigenfunction& w, double x,
                                     const Tolerances& tol) {
  return transform_state_wronskian(PartnerPotential(chain, tol), w, x);
}

EquivalenceReport verify_equivalence(double alpha, double beta, int big_n, const Grid& grid, const Tolerances& tol) {
  const ModelParams base{alpha, beta};
  validate(base);
  std::ostringstream why;
  if (big_n < 2 || big_n % 2 == 0) {
    why << "N = " << big_n << " rejected: N must be odd and at least 3.";
    if (big_n >= 2) {
      const analytic::PoleEigenfunction seed(base, Condition::Second, Family::Phi, big_n - 1, tol);
      const int nodes = spectrum::count_nodes([&](double x) { return seed(x); }, seed_check_grid());
      why << " Seed phi{2}_{" << alpha << "," << big_n - 1 << "} has " << nodes
          << " node(s) (nodeless type: " << to_string(spectrum::nodeless_class(base, big_n - 1))
          << "); the anti-bound seed index N-1 must be even to be nodeless.";
    }
    throw Error(ErrorCode::PreconditionFailed, why.str());
  }
  const double lo = 0.5 + std::sqrt(beta);
  const double hi = 1.5 + std::sqrt(beta);
  if (!(alpha > lo && alpha < hi)) {
    why << "alpha = " << alpha << " outside (" << lo << ", " << hi << "): H_alpha must have exactly one bound state";
    throw Error(ErrorCode::PreconditionFailed, why.str());
  }

  EquivalenceReport report;
  report.alpha = alpha;
  report.beta = beta;
  report.big_n = big_n;
  report.grid = grid;

  const PartnerPotential first = [&] {
    try {
      return partner_potential_first_order(base, {SeedKind::AntiBound, Condition::Second, big_n - 1}, tol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SeedHasNode) throw Error(ErrorCode::PreconditionFailed, e.what());
      throw;
    }
  }();
  const ModelParams shifted{alpha + big_n, beta};
  SusyChain chain{shifted, {}};
  for (int j = 1; j < big_n; ++j) chain.seeds.push_back({SeedKind::Bound, Condition::First, j});
  const PartnerPotential crum = partner_potential_wronskian(chain, seed_check_grid(), tol);

  for (int i = 0; i < grid.points; ++i) {
    const double x = grid.at(i);
    report.max_discrepancy = std::max(report.max_discrepancy, std::abs(first(x) - crum(x)));
  }

  report.first_order_spectrum = oracle::bound_states(first.evaluator(), beta);
  report.wronskian_spectrum = oracle::bound_states(crum.evaluator(), beta);
  report.expected_energies = {pole_exponents(shifted, Condition::First, 0, tol).energy,
                              pole_exponents(base, Condition::First, 0, tol).energy};

  const auto& a = report.first_order_spectrum.energies;
  const auto& b = report.wronskian_spectrum.energies;
  const auto& e = report.expected_energies;
  bool sizes = a.size() == e.size() && b.size() == e.size();
  report.spectrum_error = sizes ? 0.0 : std::numeric_limits<double>::infinity();
  if (sizes)
    for (std::size_t i = 0; i < e.size(); ++i)
      report.spectrum_error = std::max({report.spectrum_error, std::abs(a[i] - e[i]), std::abs(b[i] - e[i]),
                                        std::abs(a[i] - b[i])});
  report.passed = report.max_discrepancy < 1e-7 && report.spectrum_error < 1e-5;
  return report;
}

}  // namespace susy
}  // namespace rm2
