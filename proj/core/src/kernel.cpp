#include "paps/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paps/error.hpp"
#include "paps/mittag_leffler.hpp"
#include "paps/quadrature.hpp"

namespace paps {

FractionalKernelSpec FractionalKernelSpec::dirichlet(double gamma, std::size_t modes) {
  FractionalKernelSpec spec;
  spec.gamma = gamma;
  for (std::size_t k = 1; k <= modes; ++k) spec.spectrum.push_back(static_cast<double>(k * k));
  spec.validate();
  return spec;
}

void FractionalKernelSpec::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ArgumentError("fractional order gamma must lie in (0, 1), got " + std::to_string(gamma));
  }
  if (spectrum.empty()) throw ArgumentError("kernel spectrum is empty");
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (!(spectrum[k] > 0.0)) throw ArgumentError("kernel spectrum must be positive");
    if (k > 0 && spectrum[k] < spectrum[k - 1]) {
      throw ArgumentError("kernel spectrum must be sorted ascending");
    }
  }
}

double resolvent(double gamma, double lambda, double t) {
  if (!(t > 0.0)) throw ArgumentError("resolvent kernel is singular at t <= 0");
  return std::pow(t, gamma - 1.0) * mittag_leffler(gamma, gamma, -lambda * std::pow(t, gamma));
}

double resolvent_kernel(const FractionalKernelSpec& spec, std::size_t k, double t) {
  if (k >= spec.spectrum.size()) throw ArgumentError("resolvent_kernel: mode index out of range");
  return resolvent(spec.gamma, spec.spectrum[k], t);
}

double resolvent_integral(double gamma, double lambda, double T) {
  if (!(T >= 0.0)) throw ArgumentError("resolvent_integral: T must be nonnegative");
  const double z = -lambda * std::pow(T, gamma);
  // 1 - E_{g,1}(z) = -z E_{g,1+g}(z) avoids cancellation for small T
  return -z * mittag_leffler(gamma, 1.0 + gamma, z) / lambda;
}

double resolvent_tail(double gamma, double lambda, double T) {
  if (!(T >= 0.0)) throw ArgumentError("resolvent_tail: T must be nonnegative");
  return mittag_leffler(gamma, 1.0, -lambda * std::pow(T, gamma)) / lambda;
}

SGammaConstant s_gamma_constant(double gamma, double p) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ArgumentError("s_gamma_constant: gamma must lie in (0, 1)");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("s_gamma_constant: need 1 <= p < inf");
  if (!(gamma * p > 1.0)) {
    throw DivergenceError("s_gamma_constant: gamma * p = " + std::to_string(gamma * p) +
                          " <= 1, so the integral of s^(q(gamma-1)) over [0, 1] diverges");
  }
  SGammaConstant out;
  out.gamma = gamma;
  out.p = p;
  out.q = p / (p - 1.0);
  const double s = gamma + 1.0;
  constexpr int kTerms = 10000;
  double partial = 0.0;
  for (int k = kTerms; k >= 1; --k) partial += std::pow(static_cast<double>(k), -s);
  const double n = kTerms;
  out.series_tail_lower = std::pow(n + 1.0, 1.0 - s) / (s - 1.0);
  out.series_tail_upper = std::pow(n, 1.0 - s) / (s - 1.0);
  // Euler-Maclaurin remainder for sum_{k > n} k^{-s}
  const double em = std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s) +
                    s * std::pow(n, -s - 1.0) / 12.0 -
                    s * (s + 1.0) * (s + 2.0) * std::pow(n, -s - 3.0) / 720.0;
  out.series = partial + em;
  const double e = out.q * (gamma - 1.0);
  out.integral_direct = std::pow(1.0 / (1.0 + e), 1.0 / out.q);
  out.integral_printed = std::pow(1.0 - e, 1.0 / out.q);
  out.total = out.series + out.integral_direct;
  return out;
}

KernelBounds verify_kernel_bounds(const FractionalKernelSpec& spec, const std::vector<double>& grid) {
  spec.validate();
  KernelBounds out;
  for (double t : grid) {
    if (!(t > 0.0)) throw ArgumentError("verify_kernel_bounds: grid must lie in (0, inf)");
    double worst = 0.0;
    for (double lambda : spec.spectrum) worst = std::max(worst, resolvent(spec.gamma, lambda, t));
    if (t <= 1.0) {
      out.c_small = std::max(out.c_small, worst * std::pow(t, 1.0 - spec.gamma));
      ++out.small_points;
    }
    if (t >= 1.0) {
      out.c_large = std::max(out.c_large, worst * std::pow(t, 1.0 + spec.gamma));
      ++out.large_points;
    }
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi >= lo) || n == 0) throw ArgumentError("log_grid: need 0 < lo <= hi, n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1.0));
  out.back() = hi;
  return out;
}

ExponentialSum::ExponentialSum(double gamma, double lambda, double tau_min, double tau_max) {
  if (!(gamma > 0.0 && gamma < 1.0) || !(lambda > 0.0) || !(tau_min > 0.0) ||
      !(tau_max >= tau_min)) {
    throw ArgumentError("ExponentialSum: need 0 < gamma < 1, lambda > 0, 0 < tau_min <= tau_max");
  }
  const double pi = std::numbers::pi;
  const double sg = std::sin(pi * gamma);
  const double cg = std::cos(pi * gamma);
  const double x_lo = std::log(1e-6 / tau_max);
  const double x_hi = std::log(40.0 / tau_min);
  const double x_star = std::log(lambda) / gamma;
  constexpr double kWidth = 0.5;
  const double inner = std::min(kWidth, 0.25 * pi * (1.0 - gamma) / gamma);

  // panel edges: refined geometrically around the peak of K at x_star
  std::vector<double> edges;
  const double centre = std::clamp(x_star, x_lo, x_hi);
  edges.push_back(centre);
  for (double x = centre, w = inner; x < x_hi; w = std::min(kWidth, 1.5 * w)) {
    x = std::min(x + w, x_hi);
    edges.push_back(x);
  }
  for (double x = centre, w = inner; x > x_lo; w = std::min(kWidth, 1.5 * w)) {
    x = std::max(x - w, x_lo);
    edges.push_back(x);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const GaussRule& rule = gauss_legendre(8);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[j];
      const double rho = std::exp(x);
      const double y = std::exp(gamma * (x - x_star));  // rho^gamma / lambda
      const double k = sg * y / (pi * lambda * (y * y + 2.0 * y * cg + 1.0));
      rates_.push_back(rho);
      weights_.push_back(0.5 * (b - a) * rule.weights[j] * k * rho);
    }
  }
}

double ExponentialSum::operator()(double tau) const {
  double s = 0.0;
  for (std::size_t j = 0; j < rates_.size(); ++j) s += weights_[j] * std::exp(-rates_[j] * tau);
  return s;
}

}  // namespace paps
