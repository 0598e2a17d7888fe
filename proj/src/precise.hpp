#pragma once

// Extended-precision evaluation of psi pole eigenfunctions, used where a
// check cancels far more digits than a double carries (the image of a
// growing solution that the operator maps onto a decaying one).

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rm2/analytic.hpp"

namespace rm2::precise {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Sample {
  Real value;
  Real derivative;
};

/// Value and x-derivative of a psi-family pole eigenfunction.
Sample psi(const analytic::PoleEigenfunction& f, double x);

/// (-d/dx + W_lambda) applied to a psi-family function of H_{lambda-1}, rounded to double.
double b_plus_psi(const ModelParams& p, const analytic::PoleEigenfunction& f, double x);

}  // namespace rm2::precise
