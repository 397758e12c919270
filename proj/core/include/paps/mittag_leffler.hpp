#pragma once

namespace paps {

/// 1 / Gamma(x); zero at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) for real z.
///
/// Positive z uses the power series. For 0 < alpha < 1 and negative z the
/// series is summed in extended precision while its terms stay moderate,
/// then the algebraic asymptotic expansion takes over where its optimally
/// truncated error is below 1e-14, and the remaining gap is covered by the
/// real-line integral representation. Negative z with alpha >= 1 is
/// supported only where the series is safe or the oscillating exponential
/// terms are negligible.
///
/// Throws ArgumentError for alpha <= 0 and RangeError when the value
/// overflows or falls outside the supported region.
double mittag_leffler(double alpha, double beta, double z);

namespace detail {

/// Power series summed in long double.
double ml_series(double alpha, double beta, double z);

struct AsymptoticValue {
  double value = 0.0;
  double error = 0.0;  // magnitude of the first omitted nonzero term
};

/// -sum_{k>=1} z^{-k} / Gamma(beta - alpha k) for z < 0 and alpha < 1,
/// optimally truncated.
AsymptoticValue ml_asymptotic(double alpha, double beta, double z);

/// Integral representation for 0 < alpha < 1, beta < 1 + alpha, z < 0.
double ml_integral(double alpha, double beta, double z);

}  // namespace detail

}  // namespace paps
