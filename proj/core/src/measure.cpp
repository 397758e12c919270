#include "paps/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "paps/error.hpp"
#include "paps/quadrature.hpp"

namespace paps {

MeasureDensity MeasureDensity::lebesgue() { return MeasureDensity(); }

MeasureDensity MeasureDensity::exp_left() {
  MeasureDensity d;
  d.kind_ = Kind::exp_left;
  d.name_ = "exp-left";
  return d;
}

MeasureDensity MeasureDensity::table(std::vector<double> breaks, std::vector<double> values) {
  if (breaks.empty() || breaks.size() != values.size()) {
    throw ArgumentError("density table: need equally many (>= 1) breakpoints and values");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw ArgumentError("density table: values must be finite and nonnegative");
    }
    if (i > 0 && !(breaks[i] > breaks[i - 1])) {
      throw ArgumentError("density table: breakpoints must be strictly increasing");
    }
  }
  MeasureDensity d;
  d.kind_ = Kind::table;
  d.name_ = "table";
  // Without an explicit (M) check, only the constant table inherits the
  // Lebesgue assertion.
  d.satisfies_m_ = false;
  d.breaks_ = std::move(breaks);
  d.values_ = std::move(values);
  return d;
}

MeasureDensity MeasureDensity::custom(std::function<double(double)> rho, std::string name,
                                      bool satisfies_m, std::vector<double> kinks) {
  if (!rho) throw ArgumentError("custom density: empty callable");
  MeasureDensity d;
  d.kind_ = Kind::custom;
  d.name_ = std::move(name);
  d.satisfies_m_ = satisfies_m;
  d.rho_ = std::move(rho);
  std::sort(kinks.begin(), kinks.end());
  d.custom_kinks_ = std::move(kinks);
  return d;
}

double MeasureDensity::operator()(double t) const {
  switch (kind_) {
    case Kind::lebesgue:
      return 1.0;
    case Kind::exp_left:
      return t <= 0.0 ? std::exp(t) : 1.0;
    case Kind::table: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      const std::size_t k = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
      return values_[k];
    }
    case Kind::custom: {
      const double v = rho_(t);
      if (!(v >= 0.0)) {
        throw DomainError("density '" + name_ + "' is negative or NaN at t = " + std::to_string(t));
      }
      return v;
    }
  }
  return 0.0;
}

std::vector<double> MeasureDensity::kinks(double a, double b) const {
  std::vector<double> out;
  auto take = [&](const std::vector<double>& xs) {
    for (double x : xs) {
      if (x > a && x < b) out.push_back(x);
    }
  };
  switch (kind_) {
    case Kind::lebesgue:
      break;
    case Kind::exp_left:
      if (a < 0.0 && b > 0.0) out.push_back(0.0);
      break;
    case Kind::table:
      take(breaks_);
      break;
    case Kind::custom:
      take(custom_kinks_);
      break;
  }
  return out;
}

MeasureDensity load_density_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read density table '" + path + "'");
  std::vector<double> ts;
  std::vector<double> vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double t;
    double v;
    if (!(ss >> t)) continue;
    std::string rest;
    if (!(ss >> v) || (ss >> rest)) {
      throw ConfigError("density table '" + path + "': expected `t value`", lineno);
    }
    ts.push_back(t);
    vs.push_back(v);
  }
  try {
    return MeasureDensity::table(std::move(ts), std::move(vs));
  } catch (const ArgumentError& e) {
    throw ConfigError("density table '" + path + "': " + e.what());
  }
}

double measure_interval(const MeasureDensity& density, double a, double b) {
  if (a > b) throw ArgumentError("measure_interval: reversed interval");
  if (a == b) return 0.0;
  using Kind = MeasureDensity::Kind;
  switch (density.kind_) {
    case Kind::lebesgue:
      return b - a;
    case Kind::exp_left: {
      auto prim = [](double t) { return t <= 0.0 ? std::exp(t) : 1.0 + t; };
      if (b <= 0.0) return std::exp(b) * -std::expm1(a - b);
      return prim(b) - prim(a);
    }
    case Kind::table: {
      const auto& br = density.breaks_;
      const auto& vs = density.values_;
      double sum = 0.0;
      double lo = a;
      for (std::size_t k = 0; k < br.size() && lo < b; ++k) {
        const double next = k + 1 < br.size() ? br[k + 1] : b;
        const double v = vs[k];
        const double piece_lo = k == 0 ? lo : std::max(lo, br[k]);
        const double piece_hi = std::min(b, next);
        if (piece_hi > piece_lo) sum += v * (piece_hi - piece_lo);
        lo = std::max(lo, piece_hi);
      }
      return sum;
    }
    case Kind::custom: {
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw ArgumentError("measure_interval: custom densities need finite endpoints");
      }
      AdaptiveOptions opt;
      opt.abs_tol = 1e-12;
      opt.rel_tol = 1e-13;
      const auto kinks = density.kinks(a, b);
      return adaptive_gauss_kronrod([&](double t) { return density(t); }, a, b, opt, kinks, 1.0)
          .value;
    }
  }
  return 0.0;
}

double ergodic_mean(const Signal& signal, const MeasureDensity& density, StepanovExponent p,
                    double r, const ErgodicOptions& options) {
  if (!(r > 0.0)) throw ArgumentError("ergodic_mean: r must be positive");
  if (!signal.domain().contains(-r, r + 1.0)) {
    throw DomainError("ergodic_mean: signal not defined on [-r, r + 1]");
  }
  const double mass = measure_interval(density, -r, r);
  if (!(mass > 0.0)) throw DomainError("ergodic_mean: mu([-r, r]) is zero");
  if (signal.is_zero()) return 0.0;

  AdaptiveOptions opt;
  opt.abs_tol = options.abs_tol * mass;  // tolerance on the mean, not the raw integral
  opt.max_intervals = options.max_intervals;

  if (p.p == 1.0 && density.kind() != MeasureDensity::Kind::custom) {
    // Swap the order of integration: integral of |f(s)| mu([s - 1, s] cut to
    // [-r, r]) over [-r, r + 1]. One adaptive pass resolves oscillations of f
    // that a fixed rule per unit cell cannot.
    std::vector<double> cuts{-r + 1.0, r};
    for (double k : density.kinks(-r - 1.0, r + 1.0)) {
      cuts.push_back(k);
      cuts.push_back(k + 1.0);
    }
    for (double x : signal.breakpoints(-r, r + 1.0)) cuts.push_back(x);
    const auto res = adaptive_gauss_kronrod(
        [&](double s) {
          const double lo = std::max(s - 1.0, -r);
          const double hi = std::min(s, r);
          if (!(hi > lo)) return 0.0;
          const double w = measure_interval(density, lo, hi);
          return w == 0.0 ? 0.0 : w * signal.norm_at(s);
        },
        -r, r + 1.0, opt, cuts, 1.0);
    return res.value / mass;
  }

  std::vector<double> kinks = density.kinks(-r, r);
  for (double x : signal.breakpoints(-r, r + 1.0)) {
    kinks.push_back(x);
    kinks.push_back(x - 1.0);
  }
  const auto res = adaptive_gauss_kronrod(
      [&](double t) {
        const double w = density(t);
        return w == 0.0 ? 0.0 : w * cell_lp_norm(signal, t, p.p);
      },
      -r, r, opt, kinks, 1.0);
  return res.value / mass;
}

double superlevel_ratio(const Signal& signal, const MeasureDensity& density, double epsilon,
                        double r, double step) {
  if (!(epsilon > 0.0)) throw ArgumentError("superlevel_ratio: epsilon must be positive");
  if (!(r > 0.0)) throw ArgumentError("superlevel_ratio: r must be positive");
  if (!(step > 0.0)) throw ArgumentError("superlevel_ratio: step must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * r / step - 1e-9));
  const double h = 2.0 * r / static_cast<double>(n);
  const bool closed = density.kind() != MeasureDensity::Kind::custom;
  double hit = 0.0;
  double all = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = -r + h * static_cast<double>(k);
    const double hi = k + 1 == n ? r : lo + h;
    const double mid = 0.5 * (lo + hi);
    const double m = closed ? measure_interval(density, lo, hi) : density(mid) * (hi - lo);
    all += m;
    if (signal.norm_at(mid) >= epsilon) hit += m;
  }
  return all > 0.0 ? hit / all : 0.0;
}

DecayCurve ergodic_decay(const Signal& signal, const MeasureDensity& density, StepanovExponent p,
                         const std::vector<double>& ladder, const ErgodicOptions& options) {
  DecayCurve out;
  out.reserve(ladder.size());
  for (double r : ladder) out.push_back({r, ergodic_mean(signal, density, p, r, options)});
  return out;
}

DecayCurve superlevel_decay(const Signal& signal, const MeasureDensity& density, double epsilon,
                            const std::vector<double>& ladder, double step) {
  DecayCurve out;
  out.reserve(ladder.size());
  for (double r : ladder) out.push_back({r, superlevel_ratio(signal, density, epsilon, r, step)});
  return out;
}

DecayCurve mass_growth(const MeasureDensity& density, const std::vector<double>& ladder) {
  DecayCurve out;
  for (double r : ladder) out.push_back({r, measure_interval(density, -r, r)});
  return out;
}

bool is_nonincreasing(const DecayCurve& curve, double rel_slack) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double prev = curve[i - 1].value;
    if (curve[i].value > prev + rel_slack * std::abs(prev)) return false;
  }
  return true;
}

bool is_strictly_decreasing(const DecayCurve& curve) {
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i].value < curve[i - 1].value)) return false;
  }
  return true;
}

}  // namespace paps
