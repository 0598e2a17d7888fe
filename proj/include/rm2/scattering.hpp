#pragma once

// Transfer matrix (A+, B+) = T (A-, B-) between the plane-wave amplitudes at
// x -> -inf (e^{+-ikx}) and x -> +inf (e^{+-ik'x}), and the S-matrix
// (B-, A+) = S (A-, B+). All entries are Gamma ratios computed in log space.

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "rm2/config.hpp"
#include "rm2/error.hpp"
#include "rm2/model.hpp"
#include "rm2/spectrum.hpp"

namespace rm2 {

enum class EntryStatus { Regular, Zero, Infinite };

struct TransferMatrix {
  Eigen::Matrix2cd t = Eigen::Matrix2cd::Identity();
  /// Row-major tags: a denominator Gamma pole gives Zero, a numerator pole Infinite.
  std::array<EntryStatus, 4> status{EntryStatus::Regular, EntryStatus::Regular, EntryStatus::Regular,
                                    EntryStatus::Regular};
  Momenta momenta;

  Complex t11() const { return t(0, 0); }
  Complex t12() const { return t(0, 1); }
  Complex t21() const { return t(1, 0); }
  Complex t22() const { return t(1, 1); }
};

struct ScatteringMatrix {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();

  Complex s11() const { return s(0, 0); }
  Complex s12() const { return s(0, 1); }
  Complex s21() const { return s(1, 0); }
  Complex s22() const { return s(1, 1); }
};

/// Raised by s_matrix when T22 vanishes; carries the classified pole nearest
/// in energy, if one lies within tol.pole_match_energy.
class AtPoleError : public Error {
 public:
  AtPoleError(const std::string& what, std::optional<PoleRecord> nearest)
      : Error(ErrorCode::AtPole, what), nearest_(std::move(nearest)) {}
  const std::optional<PoleRecord>& nearest() const { return nearest_; }

 private:
  std::optional<PoleRecord> nearest_;
};

struct PoleVerification {
  PoleRecord record;
  double residual = 0.0;
  std::vector<double> deltas;
  std::vector<double> t22_magnitudes;
  /// max/min of |T22(delta)|/delta minus one.
  double linearity_spread = 0.0;
  bool residual_ok = false;
  bool linear_ok = false;
  bool passed() const { return residual_ok && linear_ok; }
};

namespace scattering {

TransferMatrix transfer_matrix(const ModelParams& p, const Momenta& m, const Tolerances& tol = default_tolerances());
TransferMatrix transfer_matrix(const ModelParams& p, Complex energy, const Tolerances& tol = default_tolerances());

ScatteringMatrix s_matrix(const ModelParams& p, Complex energy, const Tolerances& tol = default_tolerances());

/// Momenta on the sheet of a pole record: k = i nu, k' = i mu at the pole.
Momenta record_sheet_momenta(const ModelParams& p, const PoleRecord& rec, Complex energy,
                             const Tolerances& tol = default_tolerances());

/// |1/2 -+ lambda - (i/2)(k + k') + n| with momenta on the record's sheet.
double pole_residual(const ModelParams& p, const PoleRecord& rec, Complex energy,
                     const Tolerances& tol = default_tolerances());

/// Residual at the pole plus a |T22(E + i delta)| scan for delta in
/// {1e-3, 1e-4, 1e-5}, which must fall linearly (spread under 20%).
PoleVerification verify_pole(const ModelParams& p, const PoleRecord& rec,
                             const Tolerances& tol = default_tolerances());

/// Relative violation of k(|A-|^2 - |B-|^2) = k'(|A+|^2 - |B+|^2) for the
/// solution with A- = 1, B+ = 0 at real E > 2 beta.
double flux_residual(const ModelParams& p, double energy, const Tolerances& tol = default_tolerances());

/// Real-axis zeros of T22 on [e_lo, e_hi] (principal sheet) by sign changes
/// for E < -2 beta and small local minima of |T22| above it.
std::vector<double> t22_real_zeros(const ModelParams& p, double e_lo, double e_hi, double step,
                                   const Tolerances& tol = default_tolerances());

/// min |T22| over a rectangular grid of complex energies (principal sheet).
double t22_min_modulus(const ModelParams& p, double re_lo, double re_hi, double im_lo, double im_hi, int re_points,
                       int im_points, const Tolerances& tol = default_tolerances());

}  // namespace scattering
}  // namespace rm2
