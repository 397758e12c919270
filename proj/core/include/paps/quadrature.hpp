#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace paps {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule of order n, computed once and cached for the life of the process.
const GaussRule& gauss_legendre(std::size_t n);
GaussRule make_gauss_legendre(std::size_t n);

template <class F>
double integrate_gauss(F&& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  std::size_t max_intervals = 200000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. `breakpoints` are extra
/// interior points where the integrand may be non-smooth; the initial
/// partition also splits [a, b] into pieces of length at most `max_piece`
/// when that is positive.
QuadratureResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                                        double b, const AdaptiveOptions& options = {},
                                        std::span<const double> breakpoints = {},
                                        double max_piece = 0.0);

}  // namespace paps
