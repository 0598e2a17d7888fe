#include "rm2/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rm2/error.hpp"

namespace rm2::oracle {

namespace {

constexpr double kRescale = 1e150;

struct Discretisation {
  double x0 = 0.0;
  double h = 0.0;
  std::vector<double> v;

  int size() const { return static_cast<int>(v.size()); }
  int centre() const { return size() / 2; }
};

Discretisation discretise(const Potential& potential, double half_width, int points) {
  if (points < 5) throw Error(ErrorCode::InvalidArgument, "oracle grid needs at least 5 points");
  if (points % 2 == 0) ++points;
  Discretisation d;
  d.x0 = -half_width;
  d.h = 2.0 * half_width / (points - 1);
  d.v.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double x = d.x0 + d.h * i;
    const double value = potential(x);
    if (!std::isfinite(value))
      throw Error(ErrorCode::InvalidArgument, "potential is not finite at x = " + std::to_string(x));
    d.v[static_cast<std::size_t>(i)] = value;
  }
  return d;
}

// Outcome of one Numerov sweep. `tail` holds the last two samples in sweep
// order, already rescaled consistently with each other.
struct Sweep {
  double last = 0.0;
  double before_last = 0.0;
  int nodes = 0;
};

// Numerov in the w = (1 - h^2 f / 12) psi form, f = V - E. Sweeps from index
// `from` towards `to` (inclusive) starting from a decaying exponential.
Sweep numerov(const Discretisation& d, double energy, double kappa, int from, int to,
              std::vector<double>* log_magnitude = nullptr, std::vector<int>* sign = nullptr) {
  const int dir = to >= from ? 1 : -1;
  const double h2 = d.h * d.h;
  auto fac = [&](int i) { return 1.0 - h2 * (d.v[static_cast<std::size_t>(i)] - energy) / 12.0; };

  double psi_prev = 1.0;
  double psi = std::exp(kappa * d.h);
  double w_prev = fac(from) * psi_prev;
  double w = fac(from + dir) * psi;
  int nodes = 0;
  double log_offset = 0.0;
  auto record = [&](double value) {
    if (log_magnitude == nullptr) return;
    log_magnitude->push_back(std::log(std::abs(value)) + log_offset);
    sign->push_back(value > 0.0 ? 1 : (value < 0.0 ? -1 : 0));
  };
  record(psi_prev);
  if (from != to) record(psi);
  for (int i = from + dir; i != to; i += dir) {
    const double f = d.v[static_cast<std::size_t>(i)] - energy;
    const double w_next = 2.0 * w - w_prev + h2 * f * psi;
    const double psi_next = w_next / fac(i + dir);
    if ((psi_next < 0.0 && psi > 0.0) || (psi_next > 0.0 && psi < 0.0)) ++nodes;
    w_prev = w;
    w = w_next;
    psi_prev = psi;
    psi = psi_next;
    record(psi);
    if (std::abs(psi) > kRescale) {
      w_prev /= kRescale;
      w /= kRescale;
      psi_prev /= kRescale;
      psi /= kRescale;
      log_offset += std::log(kRescale);
    }
  }
  return {psi, psi_prev, nodes};
}

double kappa_for(double asymptote, double energy) { return std::sqrt(std::max(asymptote - energy, 0.0)); }

class Shooter {
 public:
  Shooter(const Discretisation& d, double beta) : d_(d), left_(-2.0 * std::abs(beta)), right_(2.0 * std::abs(beta)) {}

  // Number of sign changes of the left-decaying solution across the domain,
  // i.e. the number of eigenvalues below `energy`.
  int count(double energy) const {
    return numerov(d_, energy, kappa_for(left_, energy), 0, d_.size() - 1).nodes;
  }

  // Discrete Wronskian of the left and right solutions at the centre,
  // normalised to be scale free; zero exactly at an eigenvalue.
  double mismatch(double energy) const {
    const int m = d_.centre();
    const Sweep l = numerov(d_, energy, kappa_for(left_, energy), 0, m + 1);
    const Sweep r = numerov(d_, energy, kappa_for(right_, energy), d_.size() - 1, m);
    // l: last = psi_L(m+1), before_last = psi_L(m); r: last = psi_R(m), before_last = psi_R(m+1)
    const double wr = l.before_last * r.before_last - l.last * r.last;
    const double norm = std::abs(l.before_last) * std::abs(r.last) + std::abs(l.last) * std::abs(r.before_last);
    return norm > 0.0 ? wr / norm : wr;
  }

  // Nodes of the eigenfunction. The two sweeps meet at the left solution's
  // largest sample, so a node at the centre is never seen by both.
  int stitched_nodes(double energy) const {
    const int m = d_.centre();
    std::vector<double> log_magnitude;
    std::vector<int> sign;
    numerov(d_, energy, kappa_for(left_, energy), 0, m, &log_magnitude, &sign);
    const int j = static_cast<int>(std::max_element(log_magnitude.begin(), log_magnitude.end()) - log_magnitude.begin());
    int nodes = 0;
    for (int i = 1; i <= j; ++i)
      if (sign[static_cast<std::size_t>(i)] * sign[static_cast<std::size_t>(i - 1)] < 0) ++nodes;
    if (j == d_.size() - 1) return nodes;
    return nodes + numerov(d_, energy, kappa_for(right_, energy), d_.size() - 1, j).nodes;
  }

 private:
  const Discretisation& d_;
  double left_;
  double right_;
};

double refine(const Shooter& s, double a, double b, double tolerance) {
  double fa = s.mismatch(a);
  double fb = s.mismatch(b);
  const double width = b - a;
  for (int widen = 0; widen < 4 && (fa < 0.0) == (fb < 0.0) && fa != 0.0 && fb != 0.0; ++widen) {
    a -= width;
    b += width;
    fa = s.mismatch(a);
    fb = s.mismatch(b);
  }
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw Error(ErrorCode::NoBracketSignChange, "matching function keeps its sign");
  while (b - a > tolerance) {
    const double mid = 0.5 * (a + b);
    const double fm = s.mismatch(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

namespace {

OracleSpectrum solve(const Potential& potential, double beta, const OracleConfig& cfg) {
  int points = cfg.points;
  Discretisation d = discretise(potential, cfg.half_width, points);
  const double v_min = *std::min_element(d.v.begin(), d.v.end());
  const double v_max = *std::max_element(d.v.begin(), d.v.end());
  const double e_lo = std::isnan(cfg.energy_lo) ? v_min : cfg.energy_lo;
  const double e_hi = std::isnan(cfg.energy_hi) ? -2.0 * std::abs(beta) - cfg.threshold_margin : cfg.energy_hi;

  // Numerov needs h^2 |V - E| / 12 well below one.
  auto stiffness = [&](const Discretisation& dd) { return dd.h * dd.h * (v_max - e_lo) / 12.0; };
  if (stiffness(d) > 0.05) {
    points = 2 * points - 1;
    d = discretise(potential, cfg.half_width, points);
    if (stiffness(d) > 0.05) throw Error(ErrorCode::StiffIntegration, "potential too deep for the oracle grid");
  }

  OracleSpectrum out;
  if (!(e_hi > e_lo)) return out;
  const Shooter shooter(d, beta);
  const int below_lo = shooter.count(e_lo);
  const int total = shooter.count(e_hi);
  constexpr double kCoarse = 1e-6;
  for (int i = below_lo; i < total; ++i) {
    double a = e_lo;
    double b = e_hi;
    while (b - a > kCoarse) {
      const double mid = 0.5 * (a + b);
      if (shooter.count(mid) > i) b = mid;
      else a = mid;
    }
    const double e = refine(shooter, a, b, cfg.bisection_tolerance);
    out.energies.push_back(e);
    out.node_counts.push_back(shooter.stitched_nodes(e));
  }
  return out;
}

OracleConfig widened(const OracleConfig& cfg, double half_width) {
  OracleConfig wide = cfg;
  const double h = 2.0 * cfg.half_width / (cfg.points - 1);
  wide.half_width = std::min(cfg.max_half_width, half_width);
  wide.points = 2 * static_cast<int>(std::ceil(wide.half_width / h)) + 1;
  wide.half_width = 0.5 * h * (wide.points - 1);
  return wide;
}

}  // namespace

OracleSpectrum bound_states(const Potential& potential, double beta, const OracleConfig& cfg) {
  // A level too shallow for the box shows up as a bracket without a sign
  // change of the matching function; widen and retry.
  OracleConfig current = cfg;
  OracleSpectrum out;
  for (;;) {
    try {
      out = solve(potential, beta, current);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoBracketSignChange || current.half_width >= cfg.max_half_width) throw;
      current = widened(current, 2.0 * current.half_width);
    }
  }
  if (out.energies.empty()) return out;
  const double kappa = std::sqrt(std::max(-2.0 * std::abs(beta) - out.energies.back(), 0.0));
  if (kappa * current.half_width >= cfg.min_decay || current.half_width >= cfg.max_half_width) return out;
  return solve(potential, beta,
               widened(current, kappa > 0.0 ? 1.05 * cfg.min_decay / kappa : cfg.max_half_width));
}

NormResult integrate_norm(const std::function<ScaledReal(double)>& f, const OracleConfig& cfg) {
  const int n = cfg.points;
  const double L = cfg.half_width;
  const double h = 2.0 * L / (n - 1);
  std::vector<double> logs(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const ScaledReal s = f(-L + h * i);
    if (s.value == 0.0 || !std::isfinite(s.value)) continue;
    const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double lv = 2.0 * (s.log_scale + std::log(std::abs(s.value))) + std::log(weight * h);
    logs[static_cast<std::size_t>(i)] = lv;
    peak = std::max(peak, lv);
  }
  NormResult out;
  if (!std::isfinite(peak)) {
    out.log_norm = -std::numeric_limits<double>::infinity();
    return out;
  }
  double total = 0.0;
  double tail = 0.0;
  for (int i = 0; i < n; ++i) {
    const double contribution = std::exp(logs[static_cast<std::size_t>(i)] - peak);
    total += contribution;
    if (std::abs(-L + h * i) >= 0.8 * L) tail += contribution;
  }
  out.log_norm = peak + std::log(total);
  out.tail_fraction = tail / total;
  out.divergent = out.tail_fraction > 0.01;
  return out;
}

}  // namespace rm2::oracle
