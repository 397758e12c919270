#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "paps/signal.hpp"

namespace paps {

class MeasureDensity;

/// One point of an r-ladder curve.
struct DecayPoint {
  double r = 0.0;
  double value = 0.0;
};
using DecayCurve = std::vector<DecayPoint>;

/// Exponent p in [1, inf) with its conjugate q; q is +inf when p = 1.
struct StepanovExponent {
  double p = 1.0;
  double q = std::numeric_limits<double>::infinity();

  static StepanovExponent of(double p);
  bool q_infinite() const { return p == 1.0; }
};

/// (integral over [t, t+1] of |f(s)|^p ds)^(1/p) by composite Gauss-Legendre,
/// split at signal breakpoints and, for scalar signals with p not an even
/// integer, at zero crossings.
double cell_lp_norm(const Signal& signal, double t, double p);

/// Samples s -> f(t + s) at m equispaced points of [0, 1], first component.
std::vector<double> bochner_slice(const Signal& signal, double t, std::size_t m);

/// Result of a maximum over a grid of cell positions.
struct WindowedMax {
  double value = 0.0;
  double argmax = 0.0;
  Interval window;
  double step = 0.0;
};

/// max over t in a grid on [a, b] of the unit-cell L^p norm; approximates the
/// Stepanov norm when the window covers the signal's recurrent behaviour.
WindowedMax bsp_norm(const Signal& signal, StepanovExponent p, Interval window,
                     double step = 0.01);

/// max over grid t in [a, b] of the unit-cell L^p norm of f(. + tau) - f.
WindowedMax translation_defect(const Signal& signal, double tau, StepanovExponent p,
                               Interval window, double step = 0.01);

struct TranslationScanOptions {
  double tau_step = 0.01;
  /// Window grid step used by the accurate defect during refinement.
  double refine_step = 0.05;
  std::size_t max_clusters = 64;
};

struct TranslationCluster {
  double lo = 0.0;
  double hi = 0.0;
  double best_tau = 0.0;
  double best_defect = 0.0;
};

struct TranslationScan {
  std::vector<double> hits;
  std::vector<TranslationCluster> clusters;
  /// Largest distance between consecutive hits; empty when fewer than two hits.
  std::optional<double> largest_gap;
  bool empty = true;
  bool clusters_truncated = false;
  double epsilon = 0.0;
  Interval search;
  Interval window;
};

/// Scans tau over a grid on [0, L] for translation defects <= epsilon. The scan
/// uses trapezoid cell integrals on the tau grid; each cluster of hits is
/// refined with the quadrature-based defect.
TranslationScan find_translation_numbers(const Signal& signal, double epsilon,
                                         StepanovExponent p, Interval search, Interval window,
                                         const TranslationScanOptions& options = {});

struct ModulusEntry {
  double delta = 0.0;
  double modulus = 0.0;
};

/// For each delta, max over grid pairs |t - t'| <= delta of |f(t) - f(t')|.
/// step defaults to min(deltas) / 4.
std::vector<ModulusEntry> uniform_continuity_modulus(const Signal& signal, Interval window,
                                                     const std::vector<double>& deltas,
                                                     double step = 0.0);

using ScalarNonlinearity = std::function<double(double, double)>;

/// Ergodic mean of s -> f(s, x(s)) - f(s, x1(s)) along the r ladder.
DecayCurve composition_ergodic_check(const ScalarNonlinearity& f, const Signal& x,
                                     const Signal& x1, const MeasureDensity& density,
                                     StepanovExponent p, const std::vector<double>& ladder);

struct CompositionScenario {
  std::string name;
  ScalarNonlinearity f;
  Signal x;
  Signal x1;
};

/// Built-in scenarios: identity with x = x1; identity with an arctan-shift
/// remainder; psi1(t) * x / (1 + |x|) with x = sin + arctan-shift.
std::vector<CompositionScenario> composition_scenarios();

}  // namespace paps
