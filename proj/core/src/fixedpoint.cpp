#include "paps/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paps/error.hpp"

namespace paps {

GridField::GridField(std::vector<double> t, std::size_t d, double fill)
    : times(std::move(t)), dim(d), values(times.size() * d, fill) {
  if (d == 0) throw ArgumentError("GridField: dim must be positive");
}

GridField GridField::sample(const Signal& signal, std::vector<double> t) {
  GridField f(std::move(t), signal.dimension());
  for (std::size_t i = 0; i < f.size(); ++i) signal.evaluate(f.times[i], f.row(i));
  return f;
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

Signal GridField::to_signal() const { return Signal::samples(times, dim, values); }

double sup_distance(const GridField& a, const GridField& b) {
  if (a.dim != b.dim || a.values.size() != b.values.size()) {
    throw ArgumentError("sup_distance: grid fields have different shapes");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

bool IterationReport::residuals_nonincreasing_after_burn_in(double rel_slack) const {
  for (std::size_t n = burn_in + 1; n < residuals.size(); ++n) {
    if (residuals[n] > residuals[n - 1] * (1.0 + rel_slack) + 1e-300) return false;
  }
  return true;
}

double IterationReport::max_ratio_after_burn_in() const {
  double m = 0.0;
  for (std::size_t n = burn_in; n < ratios.size(); ++n) m = std::max(m, ratios[n]);
  return m;
}

PicardResult picard_iterate(const GridMap& map, GridField initial, const PicardOptions& options) {
  if (!(options.tolerance > 0.0)) throw ArgumentError("picard_iterate: tolerance must be positive");
  PicardResult out;
  IterationReport& rep = out.report;
  rep.tolerance = options.tolerance;

  auto apply = [&](const GridField& u, std::size_t n) {
    try {
      GridField next = map(u);
      if (next.dim != u.dim || next.values.size() != u.values.size()) {
        throw ArgumentError("map changed the grid shape");
      }
      return next;
    } catch (const IterationError&) {
      throw;
    } catch (const std::exception& e) {
      throw IterationError(n, e.what());
    }
  };
  auto observe = [&](std::size_t n, const GridField& u) {
    if (!options.observer) return;
    try {
      options.observer(n, u);
    } catch (const IterationError&) {
      throw;
    } catch (const std::exception& e) {
      throw IterationError(n, e.what());
    }
  };

  GridField u = std::move(initial);
  observe(0, u);
  for (std::size_t n = 1; n <= options.max_iterations; ++n) {
    GridField next = apply(u, n);
    const double r = sup_distance(next, u);
    if (!rep.residuals.empty()) {
      const double prev = rep.residuals.back();
      rep.ratios.push_back(prev > 0.0 ? r / prev : 0.0);
    }
    rep.residuals.push_back(r);
    rep.iterations = n;
    u = std::move(next);
    observe(n, u);
    if (!std::isfinite(r)) break;
    if (r <= options.tolerance) {
      rep.converged = true;
      break;
    }
  }
  rep.final_residual = sup_distance(apply(u, rep.iterations + 1), u);
  if (rep.converged && rep.final_residual > options.tolerance) rep.converged = false;
  out.solution = std::move(u);
  return out;
}

ProbeReport contraction_probe(const std::function<double(double)>& g,
                              const std::vector<std::pair<double, double>>& pairs,
                              const std::vector<double>& epsilons) {
  ProbeReport rep;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw ArgumentError("contraction_probe: epsilons must be positive");
    rep.checks.push_back({eps, 0, 0.0, true, true});
  }
  for (const auto& [x, y] : pairs) {
    const double d = std::abs(x - y);
    if (d == 0.0) continue;
    ++rep.pairs;
    const double img = std::abs(g(x) - g(y));
    const double ratio = img / d;
    if (ratio > rep.sup_ratio) {
      rep.sup_ratio = ratio;
      rep.argmax = {x, y};
    }
    for (auto& c : rep.checks) {
      if (d >= c.epsilon && d < c.epsilon + c.epsilon * c.epsilon) {
        ++c.pairs;
        c.vacuous = false;
        c.worst_image = std::max(c.worst_image, img);
        if (!(img < c.epsilon)) c.passed = false;
      }
    }
  }
  if (rep.pairs == 0) throw ArgumentError("contraction_probe: no sample pair with x != y");
  for (const auto& c : rep.checks) {
    if (!c.passed) rep.all_passed = false;
  }
  return rep;
}

std::vector<std::pair<double, double>> annulus_pairs(double lo, double hi,
                                                     const std::vector<double>& epsilons,
                                                     std::size_t per_epsilon) {
  if (!(hi > lo) || per_epsilon < 2) throw ArgumentError("annulus_pairs: bad range");
  std::vector<std::pair<double, double>> out;
  const std::size_t nx = std::max<std::size_t>(2, per_epsilon / 8);
  for (double eps : epsilons) {
    const std::size_t nd = per_epsilon / nx;
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = lo + (hi - lo) * i / (nx - 1.0);
      for (std::size_t j = 0; j < nd; ++j) {
        // stay strictly inside [eps, eps + eps^2)
        const double d = eps + eps * eps * j / static_cast<double>(nd);
        out.emplace_back(x, x + d);
        out.emplace_back(x, x - d);
      }
    }
  }
  return out;
}

std::vector<std::pair<double, double>> grid_pairs(double lo, double hi, std::size_t n) {
  if (n < 2 || !(hi > lo)) throw ArgumentError("grid_pairs: need n >= 2 and lo < hi");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.emplace_back(lo + (hi - lo) * i / (n - 1.0), lo + (hi - lo) * j / (n - 1.0));
    }
  }
  return out;
}

std::vector<double> TimeGrid::nodes() const {
  if (!(h > 0.0) || !(t1 > t0)) throw ConfigError("time grid needs t1 > t0 and h > 0");
  const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / h - 1e-9));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = t0 + h * static_cast<double>(i);
  out[n] = t1;
  return out;
}

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("solver tolerance must be positive");
  if (max_iterations == 0) throw ConfigError("solver max_iterations must be positive");
  if (!(grid.h > 0.0) || !(grid.t1 > grid.t0)) throw ConfigError("grid needs t1 > t0 and h > 0");
  if (t_trunc && !(*t_trunc > 0.0)) throw ConfigError("t_trunc must be positive");
  if (quadrature_order == 0) throw ConfigError("quadrature order must be positive");
  if (!(history_fine >= 0.0)) throw ConfigError("history_fine must be nonnegative");
  if (!(grading > 0.0)) throw ConfigError("grading must be positive");
}

}  // namespace paps
