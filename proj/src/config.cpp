#include "rm2/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rm2/error.hpp"

namespace rm2 {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PoleOfGamma: return "PoleOfGamma";
    case ErrorCode::DegenerateConnection: return "DegenerateConnection";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::Unclassified: return "Unclassified";
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::ExponentSingularity: return "ExponentSingularity";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::SeedHasNode: return "SeedHasNode";
    case ErrorCode::WronskianZero: return "WronskianZero";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NoBracketSignChange: return "NoBracketSignChange";
    case ErrorCode::StiffIntegration: return "StiffIntegration";
    case ErrorCode::ValueUnderflow: return "ValueUnderflow";
  }
  return "Unknown";
}

const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
void assign(T& field, const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T value{};
  is >> value;
  if (!is || !(is >> std::ws).eof())
    throw Error(ErrorCode::InvalidArgument, "bad value for tolerance '" + key + "': " + text);
  field = value;
}

}  // namespace

void apply_overrides(Tolerances& tol, std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::InvalidArgument, "expected key=value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "gamma_pole_distance") assign(tol.gamma_pole_distance, key, value);
    else if (key == "series_relative") assign(tol.series_relative, key, value);
    else if (key == "series_max_terms") assign(tol.series_max_terms, key, value);
    else if (key == "connection_degenerate") assign(tol.connection_degenerate, key, value);
    else if (key == "jacobi_max_order") assign(tol.jacobi_max_order, key, value);
    else if (key == "branch_point") assign(tol.branch_point, key, value);
    else if (key == "exponent_singularity") assign(tol.exponent_singularity, key, value);
    else if (key == "t22_pole") assign(tol.t22_pole, key, value);
    else if (key == "pole_match_energy") assign(tol.pole_match_energy, key, value);
    else if (key == "wronskian_zero") assign(tol.wronskian_zero, key, value);
    else throw Error(ErrorCode::InvalidArgument, "unknown tolerance key: " + key);
  }
}

Tolerances tolerances_from_environment() {
  Tolerances tol = default_tolerances();
  const char* path = std::getenv("RM2_TOL_OVERRIDES");
  if (path == nullptr || *path == '\0') return tol;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, std::string("cannot open RM2_TOL_OVERRIDES file ") + path);
  apply_overrides(tol, in);
  return tol;
}

std::map<std::string, double> to_map(const Tolerances& tol) {
  return {
      {"gamma_pole_distance", tol.gamma_pole_distance},
      {"series_relative", tol.series_relative},
      {"series_max_terms", static_cast<double>(tol.series_max_terms)},
      {"connection_degenerate", tol.connection_degenerate},
      {"jacobi_max_order", static_cast<double>(tol.jacobi_max_order)},
      {"branch_point", tol.branch_point},
      {"exponent_singularity", tol.exponent_singularity},
      {"t22_pole", tol.t22_pole},
      {"pole_match_energy", tol.pole_match_energy},
      {"wronskian_zero", tol.wronskian_zero},
  };
}

}  // namespace rm2
