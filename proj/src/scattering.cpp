#include "rm2/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rm2/specfun.hpp"

namespace rm2::scattering {

namespace {

const Complex kI(0.0, 1.0);

struct Entry {
  Complex value;
  EntryStatus status;
};

Entry gamma_entry(Complex num1, Complex num2, Complex den1, Complex den2, const Tolerances& tol) {
  const double d = tol.gamma_pole_distance;
  if (specfun::is_gamma_pole(num1, d) || specfun::is_gamma_pole(num2, d))
    return {Complex(std::numeric_limits<double>::infinity(), 0.0), EntryStatus::Infinite};
  if (specfun::is_gamma_pole(den1, d) || specfun::is_gamma_pole(den2, d)) return {Complex(0.0, 0.0), EntryStatus::Zero};
  return {specfun::gamma_ratio({num1, num2}, {den1, den2}, tol), EntryStatus::Regular};
}

}  // namespace

TransferMatrix transfer_matrix(const ModelParams& p, const Momenta& m, const Tolerances& tol) {
  const double l = p.lambda;
  const Complex k = m.k;
  const Complex kp = m.k_prime;
  const Complex sum = 0.5 * kI * (k + kp);
  const Complex diff = 0.5 * kI * (k - kp);

  const Entry e11 = gamma_entry(1.0 + kI * k, kI * kp, 0.5 - l + sum, 0.5 + l + sum, tol);
  const Entry e12 = gamma_entry(1.0 - kI * k, kI * kp, 0.5 - l - diff, 0.5 + l - diff, tol);
  const Entry e21 = gamma_entry(1.0 + kI * k, -kI * kp, 0.5 - l + diff, 0.5 + l + diff, tol);
  const Entry e22 = gamma_entry(1.0 - kI * k, -kI * kp, 0.5 + l - sum, 0.5 - l - sum, tol);

  TransferMatrix out;
  out.momenta = m;
  out.t << e11.value, e12.value, e21.value, e22.value;
  out.status = {e11.status, e12.status, e21.status, e22.status};
  return out;
}

TransferMatrix transfer_matrix(const ModelParams& p, Complex energy, const Tolerances& tol) {
  return transfer_matrix(p, model::momenta_from_energy(p, energy, tol), tol);
}

ScatteringMatrix s_matrix(const ModelParams& p, Complex energy, const Tolerances& tol) {
  const TransferMatrix tm = transfer_matrix(p, energy, tol);
  const Complex t22 = tm.t22();
  if (std::abs(t22) <= tol.t22_pole || tm.status[3] == EntryStatus::Zero) {
    std::optional<PoleRecord> nearest;
    double best = tol.pole_match_energy;
    for (const auto& rec : spectrum::classify_poles(p, spectrum::kDefaultNCap, tol).records) {
      const double dist = std::abs(energy - Complex(rec.energy, 0.0));
      if (dist <= best) {
        best = dist;
        nearest = rec;
      }
    }
    throw AtPoleError("T22 vanishes at the requested energy", nearest);
  }
  ScatteringMatrix out;
  out.s << -tm.t21(), 1.0, tm.t.determinant(), tm.t12();
  out.s /= t22;
  return out;
}

Momenta record_sheet_momenta(const ModelParams& p, const PoleRecord& rec, Complex energy, const Tolerances& tol) {
  return model::momenta_on_sheet(p, energy, rec.nu >= 0.0 ? 1 : -1, rec.mu >= 0.0 ? 1 : -1, tol);
}

double pole_residual(const ModelParams& p, const PoleRecord& rec, Complex energy, const Tolerances& tol) {
  const Momenta m = record_sheet_momenta(p, rec, energy, tol);
  const double sign = rec.condition == Condition::First ? -1.0 : 1.0;
  return std::abs(0.5 + sign * p.lambda - 0.5 * kI * (m.k + m.k_prime) + static_cast<double>(rec.n));
}

PoleVerification verify_pole(const ModelParams& p, const PoleRecord& rec, const Tolerances& tol) {
  PoleVerification out;
  out.record = rec;
  out.residual = pole_residual(p, rec, Complex(rec.energy, 0.0), tol);
  out.residual_ok = out.residual < 1e-10;
  out.deltas = {1e-3, 1e-4, 1e-5};
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double delta : out.deltas) {
    const Complex e(rec.energy, delta);
    const TransferMatrix tm = transfer_matrix(p, record_sheet_momenta(p, rec, e, tol), tol);
    const double mag = std::abs(tm.t22());
    out.t22_magnitudes.push_back(mag);
    lo = std::min(lo, mag / delta);
    hi = std::max(hi, mag / delta);
  }
  out.linearity_spread = lo > 0.0 ? hi / lo - 1.0 : std::numeric_limits<double>::infinity();
  out.linear_ok = out.linearity_spread < 0.2;
  return out;
}

double flux_residual(const ModelParams& p, double energy, const Tolerances& tol) {
  if (!(energy > 2.0 * p.beta)) throw Error(ErrorCode::InvalidArgument, "flux check needs E > 2 beta");
  const TransferMatrix tm = transfer_matrix(p, Complex(energy, 0.0), tol);
  const Complex b_minus = -tm.t21() / tm.t22();
  const Complex a_plus = tm.t11() + tm.t12() * b_minus;
  const double k = tm.momenta.k.real();
  const double kp = tm.momenta.k_prime.real();
  const double left = k * (1.0 - std::norm(b_minus));
  const double right = kp * std::norm(a_plus);
  return std::abs(left - right) / k;
}

std::vector<double> t22_real_zeros(const ModelParams& p, double e_lo, double e_hi, double step,
                                   const Tolerances& tol) {
  std::vector<double> zeros;
  const double threshold = -2.0 * p.beta;
  auto t22_at = [&](double e) { return transfer_matrix(p, Complex(e, 0.0), tol).t22(); };

  // Below both thresholds T22 is real: bracket sign changes, refine by bisection.
  const double closed_hi = std::min(e_hi, threshold - step);
  double prev_e = e_lo;
  double prev = t22_at(prev_e).real();
  for (double e = e_lo + step; e <= closed_hi; e += step) {
    const double cur = t22_at(e).real();
    if (prev == 0.0) {
      zeros.push_back(prev_e);
    } else if ((prev < 0.0) != (cur < 0.0) && cur != 0.0) {
      double a = prev_e;
      double b = e;
      double fa = prev;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = t22_at(mid).real();
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    prev_e = e;
    prev = cur;
  }

  // Between -2 beta and e_hi T22 is complex: flag near-vanishing local minima.
  if (e_hi > threshold + step) {
    double m2 = std::numeric_limits<double>::infinity();
    double m1 = std::numeric_limits<double>::infinity();
    double e1 = 0.0;
    for (double e = std::max(e_lo, threshold + step); e <= e_hi; e += step) {
      if (std::abs(e - 2.0 * p.beta) < tol.branch_point * 10.0) continue;
      const double m0 = std::abs(t22_at(e));
      if (m1 < m2 && m1 < m0 && m1 < 1e-8) zeros.push_back(e1);
      m2 = m1;
      m1 = m0;
      e1 = e;
    }
  }
  return zeros;
}

double t22_min_modulus(const ModelParams& p, double re_lo, double re_hi, double im_lo, double im_hi, int re_points,
                       int im_points, const Tolerances& tol) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < re_points; ++i) {
    const double re = re_lo + (re_hi - re_lo) * i / std::max(1, re_points - 1);
    for (int j = 0; j < im_points; ++j) {
      const double im = im_lo + (im_hi - im_lo) * j / std::max(1, im_points - 1);
      best = std::min(best, std::abs(transfer_matrix(p, Complex(re, im), tol).t22()));
    }
  }
  return best;
}

}  // namespace rm2::scattering
