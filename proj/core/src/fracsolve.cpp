#include "paps/fracsolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "paps/error.hpp"
#include "paps/mittag_leffler.hpp"
#include "paps/parallel.hpp"

namespace paps {

namespace {

// For z = rho * dt: e0 = int_0^1 e^{-z u} du, e1 = int_0^1 u e^{-z u} du.
void exp_moments(double z, double& decay, double& e0, double& e1) {
  decay = std::exp(-z);
  if (z < 0.5) {
    double term = 1.0;  // (-z)^n / n!
    e0 = 0.0;
    e1 = 0.0;
    for (int n = 0; n < 18; ++n) {
      e0 += term / (n + 1.0);
      e1 += term / (n + 2.0);
      term *= -z / (n + 1.0);
    }
    return;
  }
  e0 = -std::expm1(-z) / z;
  e1 = (1.0 - decay * (1.0 + z)) / (z * z);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

double truncation_for_tail(const FractionalKernelSpec& kernel, double mass) {
  kernel.validate();
  if (!(mass > 0.0)) throw ArgumentError("truncation_for_tail: mass must be positive");
  const double lambda = kernel.spectrum.front();
  auto tail = [&](double T) { return resolvent_tail(kernel.gamma, lambda, T); };
  double lo = std::log(1e-8);
  double hi = std::log(1e40);
  if (tail(std::exp(lo)) <= mass) return std::exp(lo);
  if (tail(std::exp(hi)) > mass) {
    throw ConfigError("kernel tail mass cannot be pushed below " + fmt(mass));
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail(std::exp(mid)) > mass) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(hi);
}

FractionalOperator::FractionalOperator(FractionalKernelSpec kernel, const SolverConfig& config)
    : kernel_(std::move(kernel)) {
  kernel_.validate();
  config.validate();
  const double gamma = kernel_.gamma;
  const double lambda1 = kernel_.spectrum.front();
  const double allowed = config.tolerance / 10.0;

  double T;
  if (config.t_trunc) {
    T = *config.t_trunc;
    const double tail = resolvent_tail(gamma, lambda1, T);
    if (tail > allowed) {
      throw ConfigError("t_trunc = " + fmt(T) + " leaves kernel tail mass " + fmt(tail) +
                        " > tolerance/10 = " + fmt(allowed) + "; need t_trunc >= " +
                        fmt(truncation_for_tail(kernel_, allowed)));
    }
  } else {
    T = truncation_for_tail(kernel_, allowed);
    report_.t_trunc_derived = true;
  }
  report_.t_trunc = T;
  report_.tail_mass = resolvent_tail(gamma, lambda1, T);

  h_ = config.grid.h;
  const double t0 = config.grid.t0;
  const double t_start = t0 - T;
  const auto m_fine = static_cast<std::size_t>(std::floor(std::min(config.history_fine, T) / h_ + 1e-9));
  const double t_fine = t0 - h_ * static_cast<double>(m_fine);
  report_.history_fine = t0 - t_fine;
  report_.coarse_history_mass = resolvent_tail(gamma, lambda1, report_.history_fine);

  // graded part, built backwards from t_fine
  std::vector<double> graded;
  {
    double x = t_fine;
    double step = h_;
    while (x - t_start > 1e-9 * std::max(1.0, T)) {
      step *= 1.0 + config.grading;
      x = (x - t_start < 1.5 * step) ? t_start : x - step;
      graded.push_back(x);
    }
  }
  times_.assign(graded.rbegin(), graded.rend());
  fine_begin_ = times_.size();
  for (std::size_t m = m_fine; m >= 1; --m) times_.push_back(t0 - h_ * static_cast<double>(m));
  first_output_ = times_.size();
  for (double t : config.grid.nodes()) times_.push_back(t);
  if (times_.size() < 2) throw ConfigError("fractional grid has fewer than two nodes");

  double min_step = h_;
  for (std::size_t i = 1; i < times_.size(); ++i) {
    min_step = std::min(min_step, times_[i] - times_[i - 1]);
  }
  const double span = times_.back() - times_.front();
  report_.nodes = times_.size();
  report_.output_nodes = times_.size() - first_output_;

  const std::size_t n = times_.size();
  modes_.resize(kernel_.spectrum.size());
  parallel_for(modes_.size(), [&](std::size_t k) {
    const double lambda = kernel_.spectrum[k];
    Mode& mode = modes_[k];
    ExponentialSum soe(gamma, lambda, min_step, span);
    mode.rates = soe.rates();
    mode.weights = soe.weights();
    const std::size_t J = mode.rates.size();
    mode.fine_decay.resize(J);
    mode.fine_near.resize(J);
    mode.fine_far.resize(J);
    for (std::size_t j = 0; j < J; ++j) {
      double e0;
      double e1;
      exp_moments(mode.rates[j] * h_, mode.fine_decay[j], e0, e1);
      mode.fine_near[j] = h_ * (e0 - e1);
      mode.fine_far[j] = h_ * e1;
    }
    // exact product weights on the cell adjacent to each node
    auto local = [&](double dt, double& right, double& left) {
      const double scale = std::pow(dt, gamma);
      const double z = -lambda * scale;
      right = scale * mittag_leffler(gamma, gamma + 2.0, z);
      left = scale * mittag_leffler(gamma, gamma + 1.0, z) - right;
    };
    double uniform_right;
    double uniform_left;
    local(h_, uniform_right, uniform_left);
    mode.local_right.assign(n, 0.0);
    mode.local_left.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      const double dt = times_[i] - times_[i - 1];
      if (std::abs(dt - h_) <= 1e-12 * h_) {
        mode.local_right[i] = uniform_right;
        mode.local_left[i] = uniform_left;
      } else {
        local(dt, mode.local_right[i], mode.local_left[i]);
      }
    }
  });
  report_.exponentials = modes_.empty() ? 0 : modes_.front().rates.size();
}

GridField FractionalOperator::convolve(const GridField& forcing) const {
  const std::size_t n = times_.size();
  const std::size_t m = modes_.size();
  if (forcing.dim != m || forcing.size() != n) {
    throw ArgumentError("FractionalOperator::convolve: forcing does not match the operator grid");
  }
  GridField out(times_, m);
  parallel_for(m, [&](std::size_t k) {
    const Mode& mode = modes_[k];
    const std::size_t J = mode.rates.size();
    std::vector<double> z(J, 0.0);
    out.at(0, k) = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double dt = times_[i] - times_[i - 1];
      const double f_right = forcing.at(i, k);
      const double f_left = forcing.at(i - 1, k);
      double hist = 0.0;
      if (std::abs(dt - h_) <= 1e-12 * h_) {
        for (std::size_t j = 0; j < J; ++j) {
          const double zd = mode.fine_decay[j] * z[j];
          hist += mode.weights[j] * zd;
          z[j] = zd + mode.fine_near[j] * f_right + mode.fine_far[j] * f_left;
        }
      } else {
        for (std::size_t j = 0; j < J; ++j) {
          double decay;
          double e0;
          double e1;
          exp_moments(mode.rates[j] * dt, decay, e0, e1);
          const double zd = decay * z[j];
          hist += mode.weights[j] * zd;
          z[j] = zd + dt * ((e0 - e1) * f_right + e1 * f_left);
        }
      }
      out.at(i, k) = hist + mode.local_right[i] * f_right + mode.local_left[i] * f_left;
    }
  });
  return out;
}

GridField FractionalOperator::forcing(const GridField& u, const NonlinearitySpec& f) const {
  if (u.dim != modes_.size() || u.size() != times_.size()) {
    throw ArgumentError("FractionalOperator: state does not match the operator grid");
  }
  if (f.dimension() != modes_.size()) {
    throw ArgumentError("FractionalOperator: nonlinearity has " + std::to_string(f.dimension()) +
                        " modes, kernel has " + std::to_string(modes_.size()));
  }
  GridField out(times_, modes_.size());
  for (std::size_t i = 0; i < times_.size(); ++i) f.evaluate(times_[i], u.row(i), out.row(i));
  return out;
}

GridField FractionalOperator::apply(const GridField& u, const NonlinearitySpec& f) const {
  return convolve(forcing(u, f));
}

GridField FractionalOperator::output_part(const GridField& field) const {
  GridField out(std::vector<double>(times_.begin() + static_cast<std::ptrdiff_t>(first_output_),
                                    times_.end()),
                field.dim);
  std::copy(field.values.begin() + static_cast<std::ptrdiff_t>(first_output_ * field.dim),
            field.values.end(), out.values.begin());
  return out;
}

GridField apply_F0(const Signal& u, const NonlinearitySpec& f, const FractionalKernelSpec& kernel,
                   const SolverConfig& config) {
  FractionalOperator op(kernel, config);
  return op.apply(GridField::sample(u, op.times()), f);
}

namespace {

// Stepanov norm of the state norm of a grid field, with cells integrated by
// the trapezoid rule on the field's own nodes.
double grid_bsp(const GridField& field, const NonlinearitySpec& f, double p, double lo, double hi,
                double step) {
  std::vector<double> norms(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) norms[i] = f.state_norm(field.row(i));
  const auto& t = field.times;
  std::vector<double> prefix(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    prefix[i] = prefix[i - 1] +
                0.5 * (t[i] - t[i - 1]) * (std::pow(norms[i], p) + std::pow(norms[i - 1], p));
  }
  auto cumulative = [&](double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t k = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    if (k + 1 >= t.size()) return prefix.back();
    const double w = (x - t[k]) / (t[k + 1] - t[k]);
    const double gx = std::pow((1.0 - w) * norms[k] + w * norms[k + 1], p);
    return prefix[k] + 0.5 * (x - t[k]) * (std::pow(norms[k], p) + gx);
  };
  double best = 0.0;
  for (double s = lo; s <= hi + 1e-12; s += step) {
    best = std::max(best, cumulative(s + 1.0) - cumulative(s));
  }
  return std::pow(best, 1.0 / p);
}

}  // namespace

FractionalSolution solve_fractional(const NonlinearitySpec& f, const FractionalKernelSpec& kernel,
                                    const SolverConfig& config, double p, double initial_value) {
  kernel.validate();
  config.validate();
  if (f.dimension() != kernel.spectrum.size()) {
    throw ConfigError("nonlinearity has " + std::to_string(f.dimension()) + " modes, kernel has " +
                      std::to_string(kernel.spectrum.size()));
  }
  const StepanovExponent sp = StepanovExponent::of(p);
  FractionalSolution out;
  FractionalSolveReport& rep = out.report;
  rep.p = p;
  rep.norm_window = config.norm_window;
  rep.constants = s_gamma_constant(kernel.gamma, p);
  try {
    rep.lipschitz_bsp = f.lipschitz_bsp(sp, config.norm_window, config.norm_step);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("fractional solver needs a globally Lipschitz nonlinearity: ") +
                      e.what());
  }
  rep.product = rep.lipschitz_bsp * rep.constants.total;
  rep.margin = 1.0 - rep.product;
  if (rep.product < 1.0 - kEqualityTolerance) {
    rep.route = "banach";
  } else if (std::abs(rep.product - 1.0) <= kEqualityTolerance) {
    rep.route = "meir-keeler";
    rep.equality_case = true;
  } else {
    throw HypothesisError("||L||_{BS^" + fmt(p) + "} * S = " + fmt(rep.lipschitz_bsp) + " * " +
                              fmt(rep.constants.total) + " = " + fmt(rep.product) +
                              " exceeds 1 (margin " + fmt(rep.margin) + ")",
                          rep.margin);
  }

  FractionalOperator op(kernel, config);
  rep.operator_report = op.report();
  GridField initial(op.times(), kernel.spectrum.size(), initial_value);
  PicardOptions options;
  options.tolerance = config.tolerance;
  options.max_iterations = config.max_iterations;
  auto result = picard_iterate([&](const GridField& u) { return op.apply(u, f); },
                               std::move(initial), options);
  out.iteration = std::move(result.report);
  out.solution = std::move(result.solution);
  out.output = op.output_part(out.solution);

  rep.max_ratio = out.iteration.max_ratio_after_burn_in();
  rep.observed_subgeometric = rep.max_ratio > 0.9;

  const GridField forcing = op.forcing(out.solution, f);
  const double t0 = config.grid.t0;
  const double lo = std::max(op.times().front(), t0 - config.history_fine);
  const double hi = std::max(lo, config.grid.t1 - 1.0);
  rep.forcing_bsp = grid_bsp(forcing, f, p, lo, hi, 0.05);
  for (std::size_t i = 0; i < out.output.size(); ++i) {
    rep.sup_solution = std::max(rep.sup_solution, f.state_norm(out.output.row(i)));
  }
  rep.bound_direct = (rep.constants.integral_direct + rep.constants.series) * rep.forcing_bsp;
  rep.bound_printed = (rep.constants.integral_printed + rep.constants.series) * rep.forcing_bsp;
  return out;
}

FieldOutput reconstruct_field(const GridField& modal, std::size_t x_points) {
  if (x_points == 0) throw ArgumentError("reconstruct_field: need at least one x point");
  FieldOutput out;
  out.times = modal.times;
  const double dx = std::numbers::pi / static_cast<double>(x_points + 1);
  for (std::size_t j = 1; j <= x_points; ++j) out.x.push_back(dx * static_cast<double>(j));
  out.values.assign(modal.size() * x_points, 0.0);
  for (std::size_t i = 0; i < modal.size(); ++i) {
    for (std::size_t j = 0; j < x_points; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < modal.dim; ++k) v += modal.at(i, k) * sine_mode(k + 1, out.x[j]);
      out.values[i * x_points + j] = v;
    }
  }
  return out;
}

HeatModelResult heat_model_run(const HeatModelParams& params, const SolverConfig& config) {
  const FractionalKernelSpec kernel = FractionalKernelSpec::dirichlet(params.gamma, params.modes);
  std::vector<double> R = params.R;
  if (R.size() > params.modes) throw ConfigError("profile R has more coefficients than modes");
  R.resize(params.modes, 0.0);
  Signal H = params.H;
  if (H.is_zero() && H.dimension() != params.modes) H = Signal::constant(std::vector<double>(params.modes, 0.0));
  const NonlinearitySpec f = NonlinearitySpec::mk_saturating(params.K, R, H);
  HeatModelResult out;
  out.solve = solve_fractional(f, kernel, config, params.p);
  out.modal = out.solve.output;
  out.field = reconstruct_field(out.modal, params.x_points);
  return out;
}

}  // namespace paps
