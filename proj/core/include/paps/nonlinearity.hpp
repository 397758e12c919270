#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "paps/funcspace.hpp"
#include "paps/signal.hpp"

namespace paps {

/// Orthonormal Dirichlet sine basis e_k(x) = sqrt(2/pi) sin(k x) on (0, pi).
double sine_mode(std::size_t k, double x);

/// Nonlinearity f(t, u) acting on mode coefficients u_1..u_M of the sine basis.
class NonlinearitySpec {
 public:
  enum class Kind {
    zero,
    mk_saturating,
    mk_saturating_v2,
    quadratic_scalar,
    quadratic_field,
    affine,
    custom
  };
  enum class StateNorm { l2, sup };

  using Fn = std::function<void(double, std::span<const double>, std::span<double>)>;

  static NonlinearitySpec zero(std::size_t modes);
  /// K(t) R / (1 + |u|) + H(t). K scalar, R mode coefficients, H modal (dim M).
  static NonlinearitySpec mk_saturating(Signal K, std::vector<double> R, Signal H);
  static NonlinearitySpec mk_saturating(Signal K, std::vector<double> R);
  /// K(t) |u| / (1 + |u|) Q + H(t).
  static NonlinearitySpec mk_saturating_v2(Signal K, std::vector<double> Q, Signal H);
  /// b(t) u_k^2 + C_k(t) for each component; sup norm over components.
  static NonlinearitySpec quadratic_scalar(Signal b, Signal C);
  /// Projection of b(t) v(x)^2 + C(t, x) where v = sum u_k e_k, evaluated on
  /// interior sine-transform points; the state norm is the sup over x.
  static NonlinearitySpec quadratic_field(Signal b, Signal C, std::size_t modes);
  /// a u + h(t), componentwise.
  static NonlinearitySpec affine(double a, Signal h);
  /// Arbitrary map with a declared global Lipschitz constant (in the l2 norm).
  static NonlinearitySpec custom(std::size_t modes, Fn fn, double lipschitz,
                                 std::string name = "custom");

  Kind kind() const;
  const std::string& name() const;
  std::size_t dimension() const;
  StateNorm state_norm_kind() const;

  void evaluate(double t, std::span<const double> u, std::span<double> out) const;
  double state_norm(std::span<const double> u) const;

  /// t -> f(t, 0) as a modal signal.
  Signal zero_section() const;
  /// t -> state_norm(f(t, 0)).
  Signal zero_section_norm() const;
  /// Global Lipschitz function L(t) with |f(t,u) - f(t,v)| <= L(t)|u - v|.
  /// Throws ArgumentError for the quadratic kinds (only locally Lipschitz).
  Signal lipschitz_function() const;
  /// Lipschitz function on the ball |u| <= rho.
  Signal ball_lipschitz(double rho) const;
  /// ||L(.)||_{BS^p} over the window; for the saturating kinds this equals
  /// ||K||_{BS^p} times the profile norm.
  double lipschitz_bsp(StepanovExponent p, Interval window, double step = 0.01) const;

  /// Sample points and values of the field v(x) = sum u_k e_k(x).
  std::vector<double> field_points() const;
  std::vector<double> synthesize(std::span<const double> u) const;

  struct Data;

 private:
  explicit NonlinearitySpec(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

double profile_norm(const std::vector<double>& coefficients);

}  // namespace paps
