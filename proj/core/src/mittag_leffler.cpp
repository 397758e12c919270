#include "paps/mittag_leffler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "paps/error.hpp"
#include "paps/quadrature.hpp"

namespace paps {

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 0.0) return x < 170.0 ? 1.0 / std::tgamma(x) : std::exp(-std::lgamma(x));
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
  const double one_minus = 1.0 - x;
  const double s = std::sin(std::numbers::pi * x);
  if (one_minus < 170.0) return s * std::tgamma(one_minus) / std::numbers::pi;
  return s * std::exp(std::lgamma(one_minus)) / std::numbers::pi;
}

namespace {

long double rgamma_l(long double x) {
  if (x <= 0.0L && x == std::floor(x)) return 0.0L;
  if (x > 0.0L) return std::exp(-std::lgamma(x));
  const long double pi = 3.141592653589793238462643383279502884L;
  return std::sin(pi * x) * std::exp(std::lgamma(1.0L - x)) / pi;
}

void check_alpha(double alpha, double z) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ArgumentError("mittag_leffler: alpha must be positive, got " + std::to_string(alpha));
  }
  if (!std::isfinite(z)) throw ArgumentError("mittag_leffler: z must be finite");
}

// Positive argument: all terms of one sign once alpha n + beta > 0, summed via
// logarithms so that huge intermediate terms do not overflow early.
double ml_positive(double alpha, double beta, double z) {
  const double growth = std::pow(z, 1.0 / alpha);
  if (growth > 700.0) {
    throw RangeError("mittag_leffler: E(" + std::to_string(z) + ") overflows (z^(1/alpha) > 700)");
  }
  const double logz = std::log(z);
  const double peak = growth / alpha;
  double sum = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const double x = alpha * n + beta;
    double term;
    if (x > 0.0) {
      term = std::exp(n * logz - std::lgamma(x));
    } else {
      term = std::pow(z, n) * rgamma(x);
    }
    sum += term;
    if (n > peak + 2.0 && x > 0.0 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  if (!std::isfinite(sum)) throw RangeError("mittag_leffler: overflow");
  return sum;
}

}  // namespace

namespace detail {

double ml_series(double alpha, double beta, double z) {
  const long double zl = z;
  const long double logabs = std::log(std::abs(zl));
  const double peak = std::pow(std::abs(z), 1.0 / alpha) / alpha;
  long double sum = 0.0L;
  for (int n = 0; n < 20000; ++n) {
    const long double x = static_cast<long double>(alpha) * n + beta;
    long double term;
    if (n == 0) {
      term = rgamma_l(x);
    } else if (x > 0.0L) {
      term = std::exp(n * logabs - std::lgamma(x));
      if (zl < 0.0L && n % 2 == 1) term = -term;
    } else {
      term = std::pow(zl, n) * rgamma_l(x);
    }
    sum += term;
    if (n > peak + 2.0 && x > 0.0L && std::abs(term) <= 1e-21L * (1.0L + std::abs(sum))) break;
  }
  return static_cast<double>(sum);
}

AsymptoticValue ml_asymptotic(double alpha, double beta, double z) {
  AsymptoticValue out;
  const double log_x = std::log(-z);
  const double log_pi = std::log(std::numbers::pi);
  double sum = 0.0;
  double prev_envelope = std::numeric_limits<double>::infinity();
  out.error = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 400; ++k) {
    // |z^-k / Gamma(beta - alpha k)| in log space; 1/Gamma(y) = Gamma(1 - y) sin(pi y) / pi for y <= 0.
    // Truncation decisions use the envelope without |sin(pi y)|, which can be
    // accidentally small near the poles.
    const double y = beta - alpha * static_cast<double>(k);
    const double log_power = -static_cast<double>(k) * log_x;
    double envelope = 0.0;
    double term = 0.0;
    if (y > 0.0) {
      envelope = std::exp(log_power - std::lgamma(y));
      term = envelope;
    } else {
      envelope = std::exp(log_power + std::lgamma(1.0 - y) - log_pi);
      term = envelope * std::sin(std::numbers::pi * y);
    }
    if (envelope > prev_envelope) {
      out.error = envelope;
      break;
    }
    if (k % 2 == 1) term = -term;  // z^-k with z < 0
    sum -= term;
    prev_envelope = envelope;
    out.error = envelope;
    if (envelope < 1e-18 * std::abs(sum)) break;
  }
  out.value = sum;
  return out;
}

double ml_integral(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta < 1.0 + alpha) || !(z < 0.0)) {
    throw ArgumentError("ml_integral: needs 0 < alpha < 1, beta < 1 + alpha, z < 0");
  }
  const double x = -z;
  const double pi = std::numbers::pi;
  const double sb = std::sin(pi * beta);
  const double sba = std::sin(pi * (beta - alpha));
  const double ca = std::cos(pi * alpha);
  const double m = 1.0 / (1.0 + alpha - beta);
  // s = v^m removes the s^(alpha - beta) endpoint behaviour
  auto integrand = [&](double v) {
    const double s = std::pow(v, m);
    const double sa = std::pow(s, alpha);
    const double den = sa * sa + 2.0 * x * sa * ca + x * x;
    const double num = sa * sb + x * sba;
    // s^(alpha-beta) * m v^(m-1) = m v^(m(1+alpha-beta) - 1) = m
    return m * std::exp(-s) * num / den;
  };
  const double s_max = 60.0;
  const double v_max = std::pow(s_max, 1.0 / m);
  std::vector<double> bps;
  if (ca < 0.0) {
    const double s_star = std::pow(x * -ca, 1.0 / alpha);
    if (s_star < s_max) {
      const double width = std::max(1e-3, std::sin(pi * alpha)) * s_star;
      for (double f : {-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0}) {
        const double s = s_star + f * width;
        if (s > 0.0 && s < s_max) bps.push_back(std::pow(s, 1.0 / m));
      }
    }
  }
  for (double s : {1e-6, 1e-3, 0.1, 1.0, 5.0, 20.0}) bps.push_back(std::pow(s, 1.0 / m));
  AdaptiveOptions opt;
  opt.abs_tol = 1e-16;
  opt.rel_tol = 1e-14;
  opt.max_intervals = 20000;
  const double value = adaptive_gauss_kronrod(integrand, 0.0, v_max, opt, bps).value;
  return value / pi;
}

}  // namespace detail

double mittag_leffler(double alpha, double beta, double z) {
  check_alpha(alpha, z);
  if (z == 0.0) return rgamma(beta);
  if (alpha == 1.0 && beta == 1.0) return std::exp(z);
  if (alpha == 1.0 && beta == 2.0) return std::expm1(z) / z;
  if (z > 0.0) return ml_positive(alpha, beta, z);

  const double x = -z;
  const double growth = std::pow(x, 1.0 / alpha);
  if (growth <= 16.0) return detail::ml_series(alpha, beta, z);

  if (alpha < 1.0) {
    const auto asym = detail::ml_asymptotic(alpha, beta, z);
    if (asym.error <= 1e-14 * std::max(1.0, std::abs(asym.value))) return asym.value;
    // reduce beta into the range of the integral representation, then climb
    // back with E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z
    int m = 0;
    double b = beta;
    while (!(b < 1.0 + alpha)) {
      b -= alpha;
      ++m;
    }
    double value = detail::ml_integral(alpha, b, z);
    for (int i = 0; i < m; ++i) {
      value = (value - rgamma(b)) / z;
      b += alpha;
    }
    return value;
  }

  if (alpha < 2.0) {
    // exponential contributions (2/alpha) Re(zeta^(1-beta) e^zeta), zeta = x^(1/alpha) e^(i pi/alpha)
    const double exp_mag =
        2.0 / alpha * std::pow(growth, 1.0 - beta) * std::exp(growth * std::cos(std::numbers::pi / alpha));
    const auto asym = detail::ml_asymptotic(alpha, beta, z);
    if (exp_mag <= 1e-15 && asym.error <= 1e-14 * std::max(1.0, std::abs(asym.value))) {
      return asym.value;
    }
  }
  throw RangeError("mittag_leffler: alpha = " + std::to_string(alpha) + ", z = " +
                   std::to_string(z) + " is outside the supported region");
}

}  // namespace paps
