#include "paps/evosolve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paps/error.hpp"
#include "paps/funcspace.hpp"
#include "paps/parallel.hpp"
#include "paps/quadrature.hpp"

namespace paps {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <class F>
double golden_min(F f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 80 && b - a > 1e-12; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

}  // namespace

Antiderivative::Antiderivative(Signal a, double lo, double hi) : a_(std::move(a)) {
  if (a_.dimension() != 1) throw ArgumentError("Antiderivative: signal must be scalar");
  lo_ = std::floor(std::min(lo, 0.0));
  const auto cells = static_cast<std::size_t>(std::ceil(std::max(hi, 0.0) - lo_));
  prefix_.assign(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    prefix_[i + 1] = prefix_[i] + cell(lo_ + static_cast<double>(i));
  }
  const double at_zero = prefix_[static_cast<std::size_t>(-lo_)];
  for (double& v : prefix_) v -= at_zero;
}

double Antiderivative::cell(double c) const {
  return integrate_gauss([&](double s) { return a_(s); }, c, c + 1.0, gauss_legendre(16));
}

double Antiderivative::partial(double c, double t) const {
  if (t == c) return 0.0;
  return integrate_gauss([&](double s) { return a_(s); }, c, t, gauss_legendre(16));
}

double Antiderivative::operator()(double t) const {
  const double hi = lo_ + static_cast<double>(prefix_.size() - 1);
  if (t >= lo_ && t <= hi) {
    const auto i = std::min(static_cast<std::size_t>(std::floor(t - lo_)), prefix_.size() - 2);
    return prefix_[i] + partial(lo_ + static_cast<double>(i), t);
  }
  if (t > hi) {
    double v = prefix_.back();
    double c = hi;
    for (; c + 1.0 <= t; c += 1.0) v += cell(c);
    return v + partial(c, t);
  }
  double v = prefix_.front();
  double c = lo_;
  for (; c - 1.0 >= t; c -= 1.0) v -= cell(c - 1.0);
  return v - partial(t, c);
}

DichotomySpec::DichotomySpec(double n, double d, std::vector<double> r, std::vector<bool> s,
                             std::optional<Signal> a)
    : N(n), delta(d), rates(std::move(r)), stable(std::move(s)), shift(std::move(a)) {
  if (shift) antiderivative_ = std::make_shared<Antiderivative>(*shift, -256.0, 256.0);
  validate();
}

double DichotomySpec::shift_integral(double s, double t) const {
  if (!shift) return 0.0;
  if (!antiderivative_) throw ArgumentError("DichotomySpec: shift set after construction");
  return antiderivative_->integral(s, t);
}

void DichotomySpec::validate() const {
  if (!(N > 0.0) || !(delta > 0.0)) throw ArgumentError("dichotomy needs N > 0 and delta > 0");
  if (rates.empty()) throw ArgumentError("dichotomy needs at least one mode");
  for (double r : rates) {
    if (!(r > 0.0)) throw ArgumentError("dichotomy mode rates must be positive");
  }
  if (!stable.empty() && stable.size() != rates.size()) {
    throw ArgumentError("dichotomy stable flags must match the number of modes");
  }
  if (shift && shift->dimension() != 1) throw ArgumentError("dichotomy shift must be scalar");
  if (shift && !antiderivative_) throw ArgumentError("DichotomySpec: shift set after construction");
}

double evolution_propagator(const DichotomySpec& spec, std::size_t k, double t, double s) {
  if (k >= spec.modes()) throw ArgumentError("evolution_propagator: mode index out of range");
  const double nu = spec.rates[k];
  if (spec.is_stable(k)) {
    if (t < s) throw ArgumentError("evolution_propagator: t < s on a stable mode");
    return std::exp(-nu * (t - s) - spec.shift_integral(s, t));
  }
  return std::exp(nu * (t - s) + spec.shift_integral(s, t));
}

double green_function(const DichotomySpec& spec, std::size_t k, double t, double s) {
  if (spec.is_stable(k)) return s <= t ? evolution_propagator(spec, k, t, s) : 0.0;
  return s > t ? -evolution_propagator(spec, k, t, s) : 0.0;
}

DichotomyCheck verify_dichotomy(const DichotomySpec& spec, const std::vector<double>& grid) {
  DichotomyCheck out;
  for (std::size_t k = 0; k < spec.modes(); ++k) {
    for (double t : grid) {
      for (double s : grid) {
        const double g = std::abs(green_function(spec, k, t, s));
        const double bound = spec.N * std::exp(-spec.delta * std::abs(t - s));
        out.worst_ratio = std::max(out.worst_ratio, g / bound);
      }
    }
  }
  out.holds = out.worst_ratio <= 1.0 + 1e-12;
  return out;
}

double theorem_constants(double N, double delta, double p) {
  if (!(N > 0.0) || !(delta > 0.0)) throw ArgumentError("theorem_constants: need N, delta > 0");
  const StepanovExponent e = StepanovExponent::of(p);
  if (e.q_infinite()) return 2.0 * N * std::exp(delta) / std::expm1(delta);
  return 2.0 * N * std::pow(2.0 / (e.q * delta), 1.0 / e.q) * std::exp(0.5 * delta) /
         std::expm1(0.5 * delta);
}

double green_truncation(double N, double delta, double forcing_bs1, double tolerance) {
  if (!(tolerance > 0.0)) throw ArgumentError("green_truncation: tolerance must be positive");
  if (!(forcing_bs1 > 0.0)) return 1.0;
  const double T = std::log(10.0 * N * forcing_bs1 / (tolerance * -std::expm1(-delta))) / delta;
  return std::max(1.0, T);
}

double green_tail_bound(double N, double delta, double forcing_bs1, double T) {
  return N * std::exp(-delta * T) * forcing_bs1 / -std::expm1(-delta);
}

GreenOperator::GreenOperator(DichotomySpec spec, const SolverConfig& config, double t_trunc)
    : spec_(std::move(spec)), h_(config.grid.h), t_trunc_(t_trunc) {
  spec_.validate();
  config.validate();
  if (!(t_trunc > 0.0)) throw ConfigError("green operator needs t_trunc > 0");
  const auto n_side = static_cast<std::size_t>(std::ceil(t_trunc / h_ - 1e-9));
  const double t0 = config.grid.t0;
  const double t1 = config.grid.t1;
  for (std::size_t m = n_side; m >= 1; --m) times_.push_back(t0 - h_ * static_cast<double>(m));
  first_output_ = times_.size();
  for (double t : config.grid.nodes()) times_.push_back(t);
  last_output_ = times_.size() - 1;
  for (std::size_t m = 1; m <= n_side; ++m) times_.push_back(t1 + h_ * static_cast<double>(m));

  const GaussRule& rule = gauss_legendre(4);
  const std::size_t n = times_.size();
  qtimes_.reserve((n - 1) * 4);
  for (std::size_t i = 1; i < n; ++i) {
    const double mid = 0.5 * (times_[i] + times_[i - 1]);
    const double half = 0.5 * (times_[i] - times_[i - 1]);
    for (double x : rule.nodes) qtimes_.push_back(mid + half * x);
  }
  // shift antiderivative at every node and quadrature point
  std::vector<double> a_nodes(n, 0.0);
  std::vector<double> a_q(qtimes_.size(), 0.0);
  if (spec_.shift) {
    for (std::size_t i = 0; i < n; ++i) a_nodes[i] = spec_.shift_integral(0.0, times_[i]);
    for (std::size_t j = 0; j < qtimes_.size(); ++j) a_q[j] = spec_.shift_integral(0.0, qtimes_[j]);
  }

  const std::size_t modes = spec_.modes();
  decay_.assign(modes, std::vector<double>(n, 0.0));
  weights_.assign(modes, std::vector<double>(qtimes_.size(), 0.0));
  parallel_for(modes, [&](std::size_t k) {
    const double nu = spec_.rates[k];
    const bool stable = spec_.is_stable(k);
    for (std::size_t i = 1; i < n; ++i) {
      const double dt = times_[i] - times_[i - 1];
      decay_[k][i] = std::exp(-nu * dt - (a_nodes[i] - a_nodes[i - 1]));
      for (std::size_t q = 0; q < 4; ++q) {
        const std::size_t j = (i - 1) * 4 + q;
        const double w = 0.5 * dt * rule.weights[q];
        if (stable) {
          weights_[k][j] = w * std::exp(-nu * (times_[i] - qtimes_[j]) - (a_nodes[i] - a_q[j]));
        } else {
          weights_[k][j] =
              -w * std::exp(-nu * (qtimes_[j] - times_[i - 1]) - (a_q[j] - a_nodes[i - 1]));
        }
      }
    }
  });
}

GridField GreenOperator::apply(const GridField& forcing) const {
  const std::size_t modes = spec_.modes();
  if (forcing.dim != modes || forcing.size() != qtimes_.size()) {
    throw ArgumentError("GreenOperator::apply: forcing does not match the quadrature grid");
  }
  const std::size_t n = times_.size();
  GridField out(times_, modes);
  parallel_for(modes, [&](std::size_t k) {
    const auto& decay = decay_[k];
    const auto& w = weights_[k];
    if (spec_.is_stable(k)) {
      double v = 0.0;
      out.at(0, k) = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        double local = 0.0;
        for (std::size_t q = 0; q < 4; ++q) local += w[(i - 1) * 4 + q] * forcing.at((i - 1) * 4 + q, k);
        v = decay[i] * v + local;
        out.at(i, k) = v;
      }
    } else {
      double v = 0.0;
      out.at(n - 1, k) = 0.0;
      for (std::size_t i = n - 1; i >= 1; --i) {
        double local = 0.0;
        for (std::size_t q = 0; q < 4; ++q) local += w[(i - 1) * 4 + q] * forcing.at((i - 1) * 4 + q, k);
        v = decay[i] * v + local;
        out.at(i - 1, k) = v;
      }
    }
  });
  return out;
}

GridField GreenOperator::to_quadrature(const GridField& nodes) const {
  const std::size_t n = times_.size();
  if (nodes.size() != n) throw ArgumentError("GreenOperator::to_quadrature: grid mismatch");
  GridField out(qtimes_, nodes.dim);
  for (std::size_t i = 1; i < n; ++i) {
    // four nodes around cell [i-1, i], clamped at the ends
    std::size_t first = i >= 2 ? i - 2 : 0;
    if (first + 3 >= n) first = n >= 4 ? n - 4 : 0;
    const std::size_t count = std::min<std::size_t>(4, n);
    for (std::size_t q = 0; q < 4; ++q) {
      const std::size_t j = (i - 1) * 4 + q;
      const double s = qtimes_[j];
      auto row = out.row(j);
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t a = 0; a < count; ++a) {
        double basis = 1.0;
        for (std::size_t b = 0; b < count; ++b) {
          if (b == a) continue;
          basis *= (s - times_[first + b]) / (times_[first + a] - times_[first + b]);
        }
        const auto src = nodes.row(first + a);
        for (std::size_t c = 0; c < nodes.dim; ++c) row[c] += basis * src[c];
      }
    }
  }
  return out;
}

GridField GreenOperator::output_part(const GridField& field) const {
  std::vector<double> t(times_.begin() + static_cast<std::ptrdiff_t>(first_output_),
                        times_.begin() + static_cast<std::ptrdiff_t>(last_output_ + 1));
  GridField out(std::move(t), field.dim);
  std::copy(field.values.begin() + static_cast<std::ptrdiff_t>(first_output_ * field.dim),
            field.values.begin() + static_cast<std::ptrdiff_t>((last_output_ + 1) * field.dim),
            out.values.begin());
  return out;
}

GreenApplyResult green_apply(const Signal& h, const DichotomySpec& spec, const SolverConfig& config) {
  spec.validate();
  config.validate();
  if (h.dimension() != spec.modes()) {
    throw ConfigError("green_apply: forcing has " + std::to_string(h.dimension()) +
                      " components, dichotomy has " + std::to_string(spec.modes()) + " modes");
  }
  GreenApplyResult out;
  const Interval dom = h.domain();
  Interval window = config.norm_window;
  window.lo = std::max(window.lo, dom.lo);
  window.hi = std::min(window.hi, dom.hi - 1.0);
  if (window.hi - window.lo >= 1.0) {
    out.forcing_bs1 = bsp_norm(h, StepanovExponent::of(1.0), window, 0.1).value;
  } else if (!(h.is_zero())) {
    throw ConfigError("green_apply: forcing domain too short for its Stepanov norm");
  }
  out.t_trunc = config.t_trunc ? *config.t_trunc
                               : green_truncation(spec.N, spec.delta, out.forcing_bs1, config.tolerance);
  const GreenOperator op(spec, config, out.t_trunc);
  if (!dom.contains(op.times().front(), op.times().back())) {
    throw ConfigError("green_apply: forcing must be defined on [" + fmt(op.times().front()) + ", " +
                      fmt(op.times().back()) + "]");
  }
  const GridField forcing = GridField::sample(h, op.quadrature_times());
  out.output = op.output_part(op.apply(forcing));
  out.tail_bound = green_tail_bound(spec.N, spec.delta, out.forcing_bs1, out.t_trunc);
  return out;
}

EvolutionSolution solve_semilinear_evolution(const NonlinearitySpec& f, const DichotomySpec& spec,
                                             double rho, double p, const SolverConfig& config) {
  spec.validate();
  config.validate();
  if (!(rho > 0.0)) throw ArgumentError("solve_semilinear_evolution: rho must be positive");
  if (f.dimension() != spec.modes()) {
    throw ConfigError("nonlinearity has " + std::to_string(f.dimension()) +
                      " modes, dichotomy has " + std::to_string(spec.modes()));
  }
  const StepanovExponent sp = StepanovExponent::of(p);
  EvolutionSolution out;
  EvolutionHypothesisReport& rep = out.report;
  rep.p = p;
  rep.rho = rho;
  rep.norm_window = config.norm_window;
  rep.c_p = theorem_constants(spec.N, spec.delta, p);
  rep.zero_section_bsp = bsp_norm(f.zero_section_norm(), sp, config.norm_window, config.norm_step).value;
  rep.lipschitz_bsp = bsp_norm(f.ball_lipschitz(rho), sp, config.norm_window, config.norm_step).value;
  rep.radius_margin = rho - rep.c_p * rep.zero_section_bsp;
  rep.lipschitz_margin = 1.0 / rep.c_p - rep.zero_section_bsp / rho - rep.lipschitz_bsp;
  rep.contraction_bound = rep.c_p * rep.lipschitz_bsp;
  if (!(rep.radius_margin > 0.0)) {
    throw HypothesisError("rho > c_p ||f(.,0)||_{BS^p} fails: rho = " + fmt(rho) + ", c_p = " +
                              fmt(rep.c_p) + ", ||f(.,0)|| = " + fmt(rep.zero_section_bsp) +
                              " (margin " + fmt(rep.radius_margin) + ")",
                          rep.radius_margin);
  }
  if (rep.lipschitz_margin < 0.0) {
    throw HypothesisError("||L_rho||_{BS^p} <= 1/c_p - ||f(.,0)||/rho fails: ||L_rho|| = " +
                              fmt(rep.lipschitz_bsp) + ", bound " +
                              fmt(1.0 / rep.c_p - rep.zero_section_bsp / rho) + " (margin " +
                              fmt(rep.lipschitz_margin) + ")",
                          rep.lipschitz_margin);
  }
  const double forcing_bound = rep.zero_section_bsp + rho * rep.lipschitz_bsp;
  rep.t_trunc = config.t_trunc ? *config.t_trunc
                               : green_truncation(spec.N, spec.delta, forcing_bound, config.tolerance);
  rep.tail_bound = green_tail_bound(spec.N, spec.delta, forcing_bound, rep.t_trunc);

  const GreenOperator op(spec, config, rep.t_trunc);
  const std::size_t m = spec.modes();
  auto map = [&](const GridField& u) {
    const GridField uq = op.to_quadrature(u);
    GridField forcing(op.quadrature_times(), m);
    for (std::size_t j = 0; j < uq.size(); ++j) f.evaluate(uq.times[j], uq.row(j), forcing.row(j));
    return op.apply(forcing);
  };
  PicardOptions options;
  options.tolerance = config.tolerance;
  options.max_iterations = config.max_iterations;
  options.observer = [&](std::size_t, const GridField& u) {
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, f.state_norm(u.row(i)));
    rep.max_iterate_norm = std::max(rep.max_iterate_norm, worst);
    if (worst > rho * (1.0 + 1e-12)) rep.ball_invariant = false;
  };
  auto result = picard_iterate(map, GridField(op.times(), m), options);
  out.iteration = std::move(result.report);
  out.solution = std::move(result.solution);
  out.output = op.output_part(out.solution);
  return out;
}

LotkaVolterraResult lotka_volterra_run(const LotkaVolterraParams& params, const SolverConfig& config) {
  config.validate();
  if (params.modes == 0) throw ConfigError("lotka: need at least one mode");
  if (params.a.dimension() != 1 || params.b.dimension() != 1) {
    throw ConfigError("lotka: a and b must be scalar signals");
  }
  if (!(params.rho > 0.0)) throw ConfigError("lotka: rho must be positive");
  Signal C = params.C;
  if (C.is_zero() && C.dimension() != params.modes) {
    C = Signal::constant(std::vector<double>(params.modes, 0.0));
  }
  if (C.dimension() != params.modes) throw ConfigError("lotka: C must have one coefficient per mode");

  LotkaVolterraResult out;
  LotkaVolterraReport& rep = out.report;
  const Interval w = config.norm_window;
  rep.a_min = std::numeric_limits<double>::infinity();
  rep.a_max = -std::numeric_limits<double>::infinity();
  double t_min = w.lo;
  double t_max = w.lo;
  const double step = 0.01;
  for (double t = w.lo; t <= w.hi + 1e-12; t += step) {
    const double v = params.a(t);
    if (v < rep.a_min) {
      rep.a_min = v;
      t_min = t;
    }
    if (v > rep.a_max) {
      rep.a_max = v;
      t_max = t;
    }
  }
  rep.a_min = std::min(rep.a_min, golden_min([&](double t) { return params.a(t); }, t_min - step, t_min + step));
  rep.a_max = std::max(rep.a_max, -golden_min([&](double t) { return -params.a(t); }, t_max - step, t_max + step));
  if (!(rep.a_min > 0.0)) throw ConfigError("lotka: a(t) must be bounded below by a positive a0");
  const double lambda1 = 1.0;
  rep.omega = rep.a_min + lambda1;
  const double auto_delta = std::min(rep.a_min + lambda1 - 1e-6,
                                     (rep.omega * rep.omega - 1.0) / (2.0 * rep.omega));
  if (params.delta) {
    if (!(*params.delta > 0.0) || *params.delta > rep.a_min + lambda1) {
      throw ConfigError("lotka: delta must lie in (0, a0 + lambda1] = (0, " +
                        fmt(rep.a_min + lambda1) + "]");
    }
    rep.delta = *params.delta;
    rep.delta_choice = "configured";
  } else {
    rep.delta = auto_delta;
    rep.delta_choice = "min(a0 + lambda1 - 1e-6, (omega^2 - 1) / (2 omega))";
  }

  std::vector<double> rates(params.modes);
  for (std::size_t k = 0; k < params.modes; ++k) rates[k] = static_cast<double>((k + 1) * (k + 1));
  const DichotomySpec spec(rep.N, rep.delta, rates, {}, params.a);
  const NonlinearitySpec f = NonlinearitySpec::quadratic_field(params.b, C, params.modes);

  const StepanovExponent one = StepanovExponent::of(1.0);
  rep.b_bs1 = bsp_norm(params.b, one, w, config.norm_step).value;
  rep.C_bs1 = bsp_norm(f.zero_section_norm(), one, w, config.norm_step).value;
  const double ed = std::exp(rep.delta);
  rep.printed_bound = (ed - 1.0) / (2.0 * ed) - rep.C_bs1 / params.rho;
  rep.printed_margin = rep.printed_bound - rep.b_bs1;
  rep.radius_margin = params.rho - 2.0 * ed / (ed - 1.0) * rep.C_bs1;
  if (!(rep.radius_margin > 0.0)) {
    throw HypothesisError("rho > 2 e^delta/(e^delta - 1) ||C||_{BS^1} fails (margin " +
                              fmt(rep.radius_margin) + ")",
                          rep.radius_margin);
  }
  if (rep.printed_margin < 0.0) {
    throw HypothesisError("|b|_{BS^1} = " + fmt(rep.b_bs1) + " exceeds (e^delta - 1)/(2 e^delta) - ||C||/rho = " +
                              fmt(rep.printed_bound) + " (margin " + fmt(rep.printed_margin) + ")",
                          rep.printed_margin);
  }

  out.solve = solve_semilinear_evolution(f, spec, params.rho, 1.0, config);
  out.modal = out.solve.output;
  out.field = reconstruct_field(out.modal, params.x_points);
  for (double v : out.field.values) rep.sup_field = std::max(rep.sup_field, std::abs(v));
  rep.within_ball = rep.sup_field <= params.rho;
  return out;
}

}  // namespace paps
