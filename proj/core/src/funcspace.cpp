#include "paps/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "paps/error.hpp"
#include "paps/measure.hpp"
#include "paps/quadrature.hpp"

namespace paps {

StepanovExponent StepanovExponent::of(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ArgumentError("Stepanov exponent must satisfy 1 <= p < inf, got " + std::to_string(p));
  }
  StepanovExponent e;
  e.p = p;
  e.q = p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
  return e;
}

namespace {

bool even_integer(double p) { return p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

double pow_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

double root_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return std::sqrt(x);
  return std::pow(x, 1.0 / p);
}

// Illinois variant of regula falsi on a bracketed sign change.
double refine_root(const Signal& f, double a, double b, double fa, double fb) {
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    const double c = (a * fb - b * fa) / (fb - fa);
    const double fc = f(c);
    if (fc == 0.0 || std::abs(b - a) < 1e-14 * (1.0 + std::abs(c))) return c;
    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

std::size_t order_for(std::size_t pieces) {
  if (pieces <= 1) return 64;
  if (pieces == 2) return 32;
  if (pieces <= 4) return 16;
  return 8;
}

std::vector<double> window_grid(Interval window, double step) {
  const double len = window.hi - window.lo;
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step - 1e-9)));
  std::vector<double> ts(n + 1);
  for (std::size_t k = 0; k <= n; ++k) ts[k] = window.lo + len * static_cast<double>(k) / n;
  return ts;
}

void check_window(Interval window, const char* who) {
  if (!(window.hi - window.lo >= 1.0)) {
    throw ArgumentError(std::string(who) + ": window must have length >= 1");
  }
}

}  // namespace

double cell_lp_norm(const Signal& signal, double t, double p) {
  const double a = t;
  const double b = t + 1.0;
  std::vector<double> cuts = signal.breakpoints(a, b);
  if (signal.dimension() == 1 && !even_integer(p)) {
    constexpr int kSamples = 64;
    double x0 = a;
    double f0 = signal(a);
    for (int k = 1; k <= kSamples; ++k) {
      const double x1 = a + (b - a) * k / kSamples;
      const double f1 = signal(x1);
      if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
        cuts.push_back(refine_root(signal, x0, x1, f0, f1));
      }
      x0 = x1;
      f0 = f1;
    }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.insert(cuts.begin(), a);
  cuts.push_back(b);
  const GaussRule& rule = gauss_legendre(order_for(cuts.size() - 1));
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    sum += integrate_gauss([&](double s) { return pow_p(signal.norm_at(s), p); }, cuts[i],
                           cuts[i + 1], rule);
  }
  return root_p(std::max(sum, 0.0), p);
}

std::vector<double> bochner_slice(const Signal& signal, double t, std::size_t m) {
  if (m < 2) throw ArgumentError("bochner_slice: need at least 2 samples");
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = signal(t + static_cast<double>(k) / static_cast<double>(m - 1));
  }
  return out;
}

WindowedMax bsp_norm(const Signal& signal, StepanovExponent p, Interval window, double step) {
  check_window(window, "bsp_norm");
  if (!(step > 0.0)) throw ArgumentError("bsp_norm: step must be positive");
  WindowedMax out;
  out.window = window;
  out.step = step;
  out.value = -1.0;
  for (double t : window_grid(window, step)) {
    const double v = cell_lp_norm(signal, t, p.p);
    if (v > out.value) {
      out.value = v;
      out.argmax = t;
    }
  }
  return out;
}

WindowedMax translation_defect(const Signal& signal, double tau, StepanovExponent p,
                               Interval window, double step) {
  check_window(window, "translation_defect");
  if (tau == 0.0) return {0.0, window.lo, window, step};
  return bsp_norm(signal.shifted(tau) - signal, p, window, step);
}

TranslationScan find_translation_numbers(const Signal& signal, double epsilon,
                                         StepanovExponent p, Interval search, Interval window,
                                         const TranslationScanOptions& options) {
  if (!(epsilon > 0.0)) throw ArgumentError("find_translation_numbers: epsilon must be positive");
  if (search.lo != 0.0 || !(search.hi >= 1.0)) {
    throw ArgumentError("find_translation_numbers: search interval must be [0, L] with L >= 1");
  }
  check_window(window, "find_translation_numbers");
  if (!(options.tau_step > 0.0)) throw ArgumentError("find_translation_numbers: bad tau step");

  // The sample step divides the unit cell exactly so cells align with samples.
  const auto per_cell = static_cast<std::size_t>(std::ceil(1.0 / options.tau_step - 1e-9));
  const double h = 1.0 / static_cast<double>(per_cell);
  const auto n_t = static_cast<std::size_t>(std::ceil((window.hi - window.lo) / h - 1e-9));
  const auto n_tau = static_cast<std::size_t>(std::floor(search.hi / h + 1e-9));
  const std::size_t n_s = n_t + per_cell + 1;  // samples spanning [a, b + 1]
  const std::size_t total = n_s + n_tau;
  const std::size_t d = signal.dimension();

  std::vector<double> samples(total * d);
  for (std::size_t j = 0; j < total; ++j) {
    signal.evaluate(window.lo + h * static_cast<double>(j),
                    std::span<double>(samples.data() + j * d, d));
  }

  TranslationScan scan;
  scan.epsilon = epsilon;
  scan.search = search;
  scan.window = window;

  std::vector<double> g(n_s);
  std::vector<double> prefix(n_s + 1);
  const double eps_p = pow_p(epsilon, p.p);
  std::vector<double> fast_defect(n_tau + 1);
  for (std::size_t k = 0; k <= n_tau; ++k) {
    for (std::size_t j = 0; j < n_s; ++j) {
      double norm;
      if (d == 1) {
        norm = std::abs(samples[j + k] - samples[j]);
      } else {
        double s2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = samples[(j + k) * d + c] - samples[j * d + c];
          s2 += diff * diff;
        }
        norm = std::sqrt(s2);
      }
      g[j] = pow_p(norm, p.p);
    }
    prefix[0] = 0.0;
    for (std::size_t j = 0; j < n_s; ++j) prefix[j + 1] = prefix[j] + g[j];
    double worst = 0.0;
    for (std::size_t i = 0; i <= n_t; ++i) {
      const double cell =
          h * (prefix[i + per_cell + 1] - prefix[i] - 0.5 * (g[i] + g[i + per_cell]));
      worst = std::max(worst, cell);
    }
    fast_defect[k] = worst;
    if (worst <= eps_p) scan.hits.push_back(h * static_cast<double>(k));
  }

  scan.empty = scan.hits.empty();
  for (std::size_t i = 1; i < scan.hits.size(); ++i) {
    const double gap = scan.hits[i] - scan.hits[i - 1];
    if (!scan.largest_gap || gap > *scan.largest_gap) scan.largest_gap = gap;
  }

  // Group consecutive grid hits into clusters and refine each by golden section.
  std::size_t k = 0;
  while (k <= n_tau) {
    if (fast_defect[k] > eps_p) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end + 1 <= n_tau && fast_defect[end + 1] <= eps_p) ++end;
    if (scan.clusters.size() == options.max_clusters) {
      scan.clusters_truncated = true;
      break;
    }
    TranslationCluster cl;
    cl.lo = h * static_cast<double>(k);
    cl.hi = h * static_cast<double>(end);
    auto defect = [&](double tau) {
      return translation_defect(signal, tau, p, window, options.refine_step).value;
    };
    double lo = std::max(0.0, cl.lo - h);
    double hi = std::min(search.hi, cl.hi + h);
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - ratio * (hi - lo);
    double x2 = lo + ratio * (hi - lo);
    double f1 = defect(x1);
    double f2 = defect(x2);
    while (hi - lo > 1e-4) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - ratio * (hi - lo);
        f1 = defect(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + ratio * (hi - lo);
        f2 = defect(x2);
      }
    }
    cl.best_tau = f1 <= f2 ? x1 : x2;
    cl.best_defect = std::min(f1, f2);
    // tau = 0 is always an exact translation number
    if (cl.lo == 0.0) {
      cl.best_tau = 0.0;
      cl.best_defect = 0.0;
    }
    scan.clusters.push_back(cl);
    k = end + 1;
  }
  return scan;
}

std::vector<ModulusEntry> uniform_continuity_modulus(const Signal& signal, Interval window,
                                                     const std::vector<double>& deltas,
                                                     double step) {
  if (!(window.hi > window.lo)) throw ArgumentError("uniform_continuity_modulus: empty window");
  std::vector<ModulusEntry> out;
  if (deltas.empty()) return out;
  double min_delta = *std::min_element(deltas.begin(), deltas.end());
  if (!(min_delta > 0.0)) throw ArgumentError("uniform_continuity_modulus: deltas must be positive");
  if (step <= 0.0) step = min_delta / 4.0;
  const auto n = static_cast<std::size_t>(std::ceil((window.hi - window.lo) / step - 1e-9)) + 1;
  const std::size_t d = signal.dimension();
  std::vector<double> v(n * d);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = std::min(window.lo + step * static_cast<double>(j), window.hi);
    signal.evaluate(t, std::span<double>(v.data() + j * d, d));
  }

  for (double delta : deltas) {
    const auto w = static_cast<std::size_t>(std::floor(delta / step + 1e-9));
    double best = 0.0;
    if (w == 0) {
      out.push_back({delta, 0.0});
      continue;
    }
    if (d == 1) {
      std::deque<std::size_t> mx;
      std::deque<std::size_t> mn;
      for (std::size_t j = 0; j < n; ++j) {
        while (!mx.empty() && v[mx.back()] <= v[j]) mx.pop_back();
        while (!mn.empty() && v[mn.back()] >= v[j]) mn.pop_back();
        mx.push_back(j);
        mn.push_back(j);
        if (mx.front() + w < j) mx.pop_front();
        if (mn.front() + w < j) mn.pop_front();
        best = std::max(best, v[mx.front()] - v[mn.front()]);
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t o = 1; o <= w && j + o < n; ++o) {
          double s2 = 0.0;
          for (std::size_t c = 0; c < d; ++c) {
            const double diff = v[(j + o) * d + c] - v[j * d + c];
            s2 += diff * diff;
          }
          best = std::max(best, std::sqrt(s2));
        }
      }
    }
    out.push_back({delta, best});
  }
  return out;
}

DecayCurve composition_ergodic_check(const ScalarNonlinearity& f, const Signal& x,
                                     const Signal& x1, const MeasureDensity& density,
                                     StepanovExponent p, const std::vector<double>& ladder) {
  if (x.dimension() != 1 || x1.dimension() != 1) {
    throw ArgumentError("composition_ergodic_check: x and x1 must be scalar signals");
  }
  const Interval dom{std::max(x.domain().lo, x1.domain().lo),
                     std::min(x.domain().hi, x1.domain().hi)};
  std::vector<double> kinks;
  if (std::isfinite(dom.lo) && std::isfinite(dom.hi)) {
    kinks = x.breakpoints(dom.lo, dom.hi);
    auto more = x1.breakpoints(dom.lo, dom.hi);
    kinks.insert(kinks.end(), more.begin(), more.end());
  }
  Signal remainder = Signal::scalar(
      [f, x, x1](double t) { return f(t, x(t)) - f(t, x1(t)); }, "composition-remainder", dom,
      std::move(kinks));
  return ergodic_decay(remainder, density, p, ladder);
}

std::vector<CompositionScenario> composition_scenarios() {
  const Signal s = Signal::sine();
  const Signal phi2 = Signal::arctan_shift();
  const Signal psi = Signal::psi1(1.0, std::numbers::sqrt2);
  std::vector<CompositionScenario> out;
  out.push_back({"identity-zero-remainder", [](double, double v) { return v; }, s, s});
  out.push_back({"identity-arctan-remainder", [](double, double v) { return v; }, s + phi2, s});
  out.push_back({"psi1-saturation",
                 [psi](double t, double v) { return psi(t) * v / (1.0 + std::abs(v)); },
                 s + phi2, s});
  return out;
}

}  // namespace paps
