#pragma once

#include <cstddef>
#include <vector>

namespace paps {

/// Order gamma in (0, 1) and positive ascending spectrum lambda_k of the
/// diagonal operator. Mode k (0-based) pairs with spectrum[k].
struct FractionalKernelSpec {
  double gamma = 0.75;
  std::vector<double> spectrum;

  /// Dirichlet Laplacian on (0, pi): lambda_k = k^2, k = 1..modes.
  static FractionalKernelSpec dirichlet(double gamma, std::size_t modes);
  void validate() const;
};

/// r(t; lambda) = t^(gamma-1) E_{gamma,gamma}(-lambda t^gamma), t > 0.
double resolvent(double gamma, double lambda, double t);
double resolvent_kernel(const FractionalKernelSpec& spec, std::size_t k, double t);

/// Integral of r over [0, T]: (1 - E_{gamma,1}(-lambda T^gamma)) / lambda.
double resolvent_integral(double gamma, double lambda, double T);
/// Integral of r over [T, inf): E_{gamma,1}(-lambda T^gamma) / lambda.
double resolvent_tail(double gamma, double lambda, double T);

struct SGammaConstant {
  double gamma = 0.0;
  double p = 0.0;
  double q = 0.0;
  /// zeta(gamma + 1): 10^4 partial terms plus an Euler-Maclaurin tail.
  double series = 0.0;
  /// Integral bounds on the series remainder after the partial sum.
  double series_tail_lower = 0.0;
  double series_tail_upper = 0.0;
  /// (integral over [0,1] of s^(q(gamma-1)) ds)^(1/q) = (1 + q(gamma-1))^(-1/q).
  double integral_direct = 0.0;
  /// (1 - q(gamma-1))^(1/q), the printed variant kept for comparison.
  double integral_printed = 0.0;
  /// series + integral_direct.
  double total = 0.0;
};

/// Throws DivergenceError when gamma * p <= 1.
SGammaConstant s_gamma_constant(double gamma, double p);

struct KernelBounds {
  /// max over grid t in (0,1] of max_k r(t; lambda_k) t^(1-gamma); 0 if none.
  double c_small = 0.0;
  /// max over grid t in [1, inf) of max_k r(t; lambda_k) t^(1+gamma); 0 if none.
  double c_large = 0.0;
  std::size_t small_points = 0;
  std::size_t large_points = 0;
};

KernelBounds verify_kernel_bounds(const FractionalKernelSpec& spec, const std::vector<double>& grid);

/// n points geometrically spaced on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Sum-of-exponentials approximation r(tau) ~ sum_j w_j exp(-rho_j tau),
/// obtained by quadrature of the Laplace-type representation
/// r(tau) = integral over rho > 0 of exp(-rho tau) K(rho) with
/// K(rho) = sin(pi gamma) rho^gamma / (pi (rho^(2 gamma) + 2 lambda rho^gamma cos(pi gamma) + lambda^2)).
/// Designed for tau in [tau_min, tau_max].
class ExponentialSum {
 public:
  ExponentialSum(double gamma, double lambda, double tau_min, double tau_max);

  double operator()(double tau) const;
  const std::vector<double>& rates() const { return rates_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return rates_.size(); }

 private:
  std::vector<double> rates_;
  std::vector<double> weights_;
};

}  // namespace paps
