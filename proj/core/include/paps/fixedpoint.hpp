#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paps/signal.hpp"

namespace paps {

/// Values of a vector-valued function on a time grid, row-major:
/// values[i * dim + j] is component j at times[i].
struct GridField {
  std::vector<double> times;
  std::size_t dim = 1;
  std::vector<double> values;

  GridField() = default;
  GridField(std::vector<double> times, std::size_t dim, double fill = 0.0);
  static GridField sample(const Signal& signal, std::vector<double> times);

  std::size_t size() const { return times.size(); }
  std::span<double> row(std::size_t i) { return {values.data() + i * dim, dim}; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * dim, dim}; }
  double& at(std::size_t i, std::size_t j) { return values[i * dim + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * dim + j]; }

  /// max |values| over all entries.
  double sup_norm() const;
  /// Linear interpolation between grid times.
  Signal to_signal() const;
};

/// max over entries of |a - b|; grids must match.
double sup_distance(const GridField& a, const GridField& b);

struct IterationReport {
  std::size_t iterations = 0;
  /// residuals[n] = sup |u_{n+1} - u_n|.
  std::vector<double> residuals;
  /// ratios[n] = residuals[n+1] / residuals[n].
  std::vector<double> ratios;
  bool converged = false;
  /// sup |map(u) - u| at the returned iterate.
  double final_residual = 0.0;
  double tolerance = 0.0;
  /// Iterations excluded from monotonicity claims.
  std::size_t burn_in = 3;

  bool residuals_nonincreasing_after_burn_in(double rel_slack = 1e-12) const;
  double max_ratio_after_burn_in() const;
};

using GridMap = std::function<GridField(const GridField&)>;

struct PicardOptions {
  double tolerance = 1e-8;
  std::size_t max_iterations = 200;
  /// Called with (iteration index, iterate) for the initial guess (index 0)
  /// and every new iterate. May throw to abort.
  std::function<void(std::size_t, const GridField&)> observer;
};

struct PicardResult {
  GridField solution;
  IterationReport report;
};

/// u_{n+1} = map(u_n) until sup |u_{n+1} - u_n| <= tolerance or the iteration
/// budget runs out. Non-convergence is reported, not thrown; exceptions from
/// the map are rethrown as IterationError carrying the iteration index.
PicardResult picard_iterate(const GridMap& map, GridField initial, const PicardOptions& options);

struct AnnulusCheck {
  double epsilon = 0.0;
  std::size_t pairs = 0;
  /// max |g(x) - g(y)| over pairs with eps <= |x - y| < eps + eps^2.
  double worst_image = 0.0;
  bool vacuous = true;
  bool passed = true;
};

struct ProbeReport {
  double sup_ratio = 0.0;
  std::pair<double, double> argmax{0.0, 0.0};
  std::size_t pairs = 0;
  std::vector<AnnulusCheck> checks;
  /// Every non-vacuous epsilon check passed.
  bool all_passed = true;
};

/// Lipschitz ratio and Meir-Keeler (eps, delta = eps^2) checks of a scalar map
/// over sample pairs. Throws ArgumentError when no pair has x != y.
ProbeReport contraction_probe(const std::function<double(double)>& g,
                              const std::vector<std::pair<double, double>>& pairs,
                              const std::vector<double>& epsilons);

/// Pairs (x, x + d) with x on a grid of [lo, hi] and d spread over
/// [eps, eps + eps^2) for each epsilon.
std::vector<std::pair<double, double>> annulus_pairs(double lo, double hi,
                                                     const std::vector<double>& epsilons,
                                                     std::size_t per_epsilon = 400);

/// All pairs of an n-point uniform grid on [lo, hi].
std::vector<std::pair<double, double>> grid_pairs(double lo, double hi, std::size_t n);

/// Time grid t0, t0 + h, ..., reaching t1 (last step shortened if needed).
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 10.0;
  double h = 0.01;
  std::vector<double> nodes() const;
};

/// Settings shared by the fractional and evolution solvers.
struct SolverConfig {
  double tolerance = 1e-8;
  std::size_t max_iterations = 200;
  TimeGrid grid;
  /// History cutoff; derived from the tolerance when absent.
  std::optional<double> t_trunc;
  /// Gauss-Legendre points per cell where quadrature of the forcing is used.
  std::size_t quadrature_order = 4;
  /// Length of the uniformly resolved history before t0 (fractional solver).
  double history_fine = 50.0;
  /// Relative growth of history steps beyond history_fine.
  double grading = 0.05;
  /// Window and step for the Stepanov norms entering hypothesis checks.
  Interval norm_window{-20.0, 20.0};
  double norm_step = 0.01;

  void validate() const;
};

}  // namespace paps
