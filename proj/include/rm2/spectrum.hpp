#pragma once

// S-matrix pole enumeration and classification, nodeless-solution types and
// an empirical node counter.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rm2/analytic.hpp"
#include "rm2/config.hpp"
#include "rm2/model.hpp"

namespace rm2 {

enum class PoleClass { Bound, Redundant, AntiBound };

std::string_view to_string(PoleClass cls);

struct PoleRecord {
  Condition condition = Condition::First;
  int n = 0;
  double exponent = 0.0;
  double energy = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  PoleClass pole_class = PoleClass::AntiBound;
  /// n sits exactly on lambda - 1/2 +- sqrt(beta); classified Redundant.
  bool boundary_case = false;
};

/// An index skipped because its exponent lambda -+ 1/2 - n vanishes.
struct SingularIndex {
  Condition condition = Condition::First;
  int n = 0;
};

struct PoleTable {
  ModelParams params;
  int n_cap = 0;
  std::vector<PoleRecord> records;
  std::vector<SingularIndex> singular;
  std::vector<std::string> notes;

  std::vector<PoleRecord> of(Condition condition, PoleClass cls) const;
};

enum class NodelessType { I, II, III, NotNodeless };

std::string_view to_string(NodelessType type);

namespace spectrum {

inline constexpr int kDefaultNCap = 20;

/// Class from the signs of (mu, nu): both positive -> Bound, opposite ->
/// Redundant, both negative -> AntiBound; a vanishing one -> Redundant with
/// `boundary` set.
PoleClass class_from_signs(double mu, double nu, bool* boundary = nullptr);

/// Class from the index ranges in n (inclusive redundant window).
PoleClass class_from_ranges(const ModelParams& p, Condition condition, int n);

PoleRecord make_record(const ModelParams& p, Condition condition, int n,
                       const Tolerances& tol = default_tolerances());

PoleTable classify_poles(const ModelParams& p, int n_cap = kDefaultNCap,
                         const Tolerances& tol = default_tolerances());

/// floor(lambda - 1/2 - sqrt(beta)) + 1 when lambda > 1/2 + sqrt(beta), else 0.
int bound_state_count(const ModelParams& p);

/// Largest bound index and largest redundant index (floor formulas).
int n_max(const ModelParams& p);
int n_r(const ModelParams& p);

/// First matching nodeless type for index m.
NodelessType nodeless_class(const ModelParams& p, int m);

/// Whether phi^{condition}_{lambda,m} is covered by a nodeless type: I or II
/// for Condition 1, III for Condition 2.
bool is_nodeless_candidate(const ModelParams& p, Condition condition, int m);

using ScaledSampler = std::function<ScaledReal(double)>;

/// Strict sign changes of f over the grid. The grid must cover [-15, 15] with
/// at least 4000 points.
int count_nodes(const ScaledSampler& f, const Grid& grid);

}  // namespace spectrum
}  // namespace rm2
