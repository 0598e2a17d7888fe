#pragma once

// Independent finite-difference validator: Numerov shooting for the bound
// states of an arbitrary potential with step asymptotics V(-inf) = -2 beta,
// V(+inf) = +2 beta, and a square-integrability probe.

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "rm2/types.hpp"

namespace rm2::oracle {

struct OracleConfig {
  double half_width = 25.0;
  int points = 8001;
  /// Search window; NaN means [min V over the grid, -2|beta| - threshold_margin].
  double energy_lo = std::numeric_limits<double>::quiet_NaN();
  double energy_hi = std::numeric_limits<double>::quiet_NaN();
  double bisection_tolerance = 1e-9;
  double threshold_margin = 1e-8;
  /// A state close to threshold decays slowly; the domain is widened (same
  /// step) until kappa * L reaches `min_decay`, up to `max_half_width`.
  double min_decay = 18.0;
  double max_half_width = 400.0;
};

struct OracleSpectrum {
  std::vector<double> energies;
  std::vector<int> node_counts;

  std::size_t size() const { return energies.size(); }
};

using Potential = std::function<double(double)>;

/// All bound states below the lower continuum threshold.
OracleSpectrum bound_states(const Potential& potential, double beta, const OracleConfig& cfg = {});

struct NormResult {
  bool divergent = false;
  /// log of the trapezoidal integral of f^2 over [-L, L].
  double log_norm = 0.0;
  /// Share of the integral coming from 0.8 L <= |x| <= L.
  double tail_fraction = 0.0;
};

/// Trapezoidal integral of f^2, flagged divergent when the outer band
/// 0.8 L <= |x| <= L carries more than 1% of the total.
NormResult integrate_norm(const std::function<ScaledReal(double)>& f, const OracleConfig& cfg = {});

}  // namespace rm2::oracle
