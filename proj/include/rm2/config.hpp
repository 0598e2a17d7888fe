#pragma once

#include <istream>
#include <map>
#include <string>

namespace rm2 {

// Numeric thresholds used across the library. The defaults are the documented
// module constants; a tolerance file (key=value lines) can override any of them.
struct Tolerances {
  // specfun
  double gamma_pole_distance = 1e-14;
  double series_relative = 1e-16;
  int series_max_terms = 10000;
  double connection_degenerate = 1e-10;
  int jacobi_max_order = 50;

  // model
  double branch_point = 1e-12;

  // analytic / spectrum
  double exponent_singularity = 1e-10;

  // scattering
  double t22_pole = 1e-13;
  double pole_match_energy = 1e-6;

  // susy
  double wronskian_zero = 1e-280;
};

/// Process-wide defaults (immutable).
const Tolerances& default_tolerances();

/// Applies `key=value` lines to `tol`. Blank lines and lines starting with '#'
/// are ignored. Unknown keys or malformed values raise InvalidArgument.
void apply_overrides(Tolerances& tol, std::istream& in);

/// Defaults with the file named by RM2_TOL_OVERRIDES applied, if set.
Tolerances tolerances_from_environment();

std::map<std::string, double> to_map(const Tolerances& tol);

}  // namespace rm2
