#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "paps/fixedpoint.hpp"
#include "paps/fracsolve.hpp"
#include "paps/nonlinearity.hpp"
#include "paps/signal.hpp"

namespace paps {

/// Antiderivative A(t) = integral from 0 to t of a scalar signal, tabulated
/// on unit cells with 16-point Gauss-Legendre and extended on demand.
class Antiderivative {
 public:
  explicit Antiderivative(Signal a, double lo = -64.0, double hi = 64.0);
  double operator()(double t) const;
  double integral(double s, double t) const { return (*this)(t) - (*this)(s); }

 private:
  double cell(double c) const;  // integral over [c, c + 1]
  double partial(double c, double t) const;

  Signal a_;
  double lo_;
  std::vector<double> prefix_;  // prefix_[i] = A(lo_ + i)
};

/// Diagonal evolution family with an exponential dichotomy. Mode k has rate
/// nu_k > 0; stable modes follow u' = -(nu_k + a(t)) u, unstable modes
/// u' = (nu_k + a(t)) u, with a the optional scalar shift.
struct DichotomySpec {
  double N = 1.0;
  double delta = 1.0;
  std::vector<double> rates;
  std::vector<bool> stable;  // empty means all stable
  std::optional<Signal> shift;

  DichotomySpec() = default;
  DichotomySpec(double N, double delta, std::vector<double> rates, std::vector<bool> stable = {},
                std::optional<Signal> shift = std::nullopt);

  std::size_t modes() const { return rates.size(); }
  bool is_stable(std::size_t k) const { return stable.empty() || stable[k]; }
  /// integral of the shift over [s, t] (0 without a shift).
  double shift_integral(double s, double t) const;
  void validate() const;

 private:
  std::shared_ptr<const Antiderivative> antiderivative_;
};

/// U_k(t, s). Throws ArgumentError for t < s on a stable mode.
double evolution_propagator(const DichotomySpec& spec, std::size_t k, double t, double s);

/// G_k(t, s): U_k(t, s) for s <= t on stable modes, -U_k(t, s) for s > t on
/// unstable modes, 0 otherwise.
double green_function(const DichotomySpec& spec, std::size_t k, double t, double s);

struct DichotomyCheck {
  /// max over grid pairs and modes of |G_k(t,s)| / (N e^{-delta |t-s|}).
  double worst_ratio = 0.0;
  bool holds = true;
};
DichotomyCheck verify_dichotomy(const DichotomySpec& spec, const std::vector<double>& grid);

/// c_p of the existence theorems: 2N e^delta / (e^delta - 1) for p = 1 and
/// 2N (2/(q delta))^(1/q) e^(delta/2) / (e^(delta/2) - 1) for p > 1.
double theorem_constants(double N, double delta, double p);

/// Discretized u(t) = integral over R of G(t, s) h(s) ds on [t0 - T, t1 + T]
/// with uniform step h; h enters through its values at 4 Gauss-Legendre nodes
/// per cell.
class GreenOperator {
 public:
  GreenOperator(DichotomySpec spec, const SolverConfig& config, double t_trunc);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& quadrature_times() const { return qtimes_; }
  std::size_t first_output() const { return first_output_; }
  std::size_t last_output() const { return last_output_; }
  double t_trunc() const { return t_trunc_; }
  const DichotomySpec& spec() const { return spec_; }

  /// forcing: values at quadrature_times(), dim = modes.
  GridField apply(const GridField& forcing) const;
  /// Cubic Lagrange interpolation of a node field to the quadrature times.
  GridField to_quadrature(const GridField& nodes) const;
  GridField output_part(const GridField& field) const;

 private:
  DichotomySpec spec_;
  double h_ = 0.0;
  double t_trunc_ = 0.0;
  std::vector<double> times_;
  std::vector<double> qtimes_;
  std::size_t first_output_ = 0;
  std::size_t last_output_ = 0;
  // per mode: per cell decay factor and the 4 quadrature weights
  std::vector<std::vector<double>> decay_;
  std::vector<std::vector<double>> weights_;
};

/// Truncation making N e^{-delta T} H / (1 - e^{-delta}) <= tolerance / 10.
double green_truncation(double N, double delta, double forcing_bs1, double tolerance);
double green_tail_bound(double N, double delta, double forcing_bs1, double T);

struct GreenApplyResult {
  GridField output;  // on [t0, t1]
  double t_trunc = 0.0;
  double tail_bound = 0.0;
  double forcing_bs1 = 0.0;
};

/// Per-mode integral of G_k(t, s) h_k(s) over s in [t - T, t + T].
/// Throws ConfigError when h is not defined on [t0 - T, t1 + T].
GreenApplyResult green_apply(const Signal& h, const DichotomySpec& spec, const SolverConfig& config);

struct EvolutionHypothesisReport {
  double p = 1.0;
  double c_p = 0.0;
  double rho = 0.0;
  double zero_section_bsp = 0.0;  // ||f(., 0)||_{BS^p}
  double lipschitz_bsp = 0.0;     // ||L_rho||_{BS^p}
  double radius_margin = 0.0;     // rho - c_p ||f(.,0)||
  double lipschitz_margin = 0.0;  // 1/c_p - ||f(.,0)||/rho - ||L_rho||
  double contraction_bound = 0.0;  // c_p ||L_rho||
  double max_iterate_norm = 0.0;
  bool ball_invariant = true;
  double t_trunc = 0.0;
  double tail_bound = 0.0;
  Interval norm_window;
};

struct EvolutionSolution {
  GridField solution;  // node grid of the operator
  GridField output;    // [t0, t1]
  IterationReport iteration;
  EvolutionHypothesisReport report;
};

/// Picard iteration of u = integral G(t,s) f(s, u(s)) ds from u = 0 inside the
/// ball |u|_inf <= rho. Refuses with HypothesisError when either sufficient
/// condition fails; the error margin is the violated slack.
EvolutionSolution solve_semilinear_evolution(const NonlinearitySpec& f, const DichotomySpec& spec,
                                             double rho, double p, const SolverConfig& config);

struct LotkaVolterraParams {
  Signal a = Signal::constant(2.0);
  Signal b = Signal::constant(0.0);
  /// Modal forcing coefficients of C(t, x), dim = modes.
  Signal C;
  std::size_t modes = 16;
  double rho = 0.3;
  std::optional<double> delta;
  std::size_t x_points = 65;
};

struct LotkaVolterraReport {
  double a_min = 0.0;
  double a_max = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  std::string delta_choice;
  double N = 1.0;
  double b_bs1 = 0.0;
  double C_bs1 = 0.0;
  /// (e^delta - 1) / (2 e^delta) - ||C||_{BS^1} / rho.
  double printed_bound = 0.0;
  double printed_margin = 0.0;
  /// rho - 2 e^delta / (e^delta - 1) ||C||_{BS^1}.
  double radius_margin = 0.0;
  double sup_field = 0.0;
  bool within_ball = false;
};

struct LotkaVolterraResult {
  FieldOutput field;
  GridField modal;
  EvolutionSolution solve;
  LotkaVolterraReport report;
};

/// v_t = v_xx - a(t) v + b(t) v^2 + C(t, x) on (0, pi), Dirichlet, truncated
/// to the first `modes` sine modes.
LotkaVolterraResult lotka_volterra_run(const LotkaVolterraParams& params, const SolverConfig& config);

}  // namespace paps
