#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace paps {

/// Closed time interval on which a signal may be evaluated. Infinite ends are
/// allowed.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= lo && t <= hi; }
  bool contains(double a, double b) const { return a >= lo && b <= hi; }
};

/// One term A sin(omega t + phase) of a quasi-periodic sum.
struct SineTerm {
  double amplitude = 1.0;
  double omega = 1.0;
  double phase = 0.0;
};

namespace detail {
class SignalImpl;
}

/// Immutable vector-valued function of time. Copies share the underlying
/// representation, so passing by value is cheap and thread-safe.
class Signal {
 public:
  using VectorFn = std::function<void(double, std::span<double>)>;
  using ScalarFn = std::function<double(double)>;

  /// The zero scalar signal.
  Signal();

  static Signal constant(double value);
  static Signal constant(std::vector<double> value);
  static Signal sine(double amplitude = 1.0, double omega = 1.0, double phase = 0.0);
  static Signal quasi_periodic(std::vector<SineTerm> terms);
  /// sin (or cos) of 1/(2 + cos(alpha t) + cos(beta t)).
  static Signal psi1(double alpha, double beta, bool use_cos = false);
  /// arctan(t) - pi/2.
  static Signal arctan_shift();
  /// Sum of bumps H(n^2 (t - i)) over i in 3^n (2Z + 1), n <= n_max, |i| <= window.
  static Signal spike_train(int n_max, double window);
  /// Samples values[k * dim + j] at t0 + k * step; linear interpolation between
  /// samples, domain error outside [t0, t0 + (count - 1) * step].
  static Signal grid(double t0, double step, std::size_t dim, std::vector<double> values);
  /// Nonuniform samples; times must be strictly increasing.
  static Signal samples(std::vector<double> times, std::size_t dim, std::vector<double> values);
  static Signal scalar(ScalarFn fn, std::string name = "custom", Interval domain = {},
                       std::vector<double> kinks = {});
  static Signal vector(std::size_t dim, VectorFn fn, std::string name = "custom",
                       Interval domain = {});

  /// f(t + tau).
  Signal shifted(double tau) const;
  /// c * f(t).
  Signal scaled(double c) const;
  /// Pointwise product with a scalar signal.
  Signal times(const Signal& scalar_factor) const;
  friend Signal operator+(const Signal& a, const Signal& b);
  friend Signal operator-(const Signal& a, const Signal& b);

  std::size_t dimension() const;
  Interval domain() const;
  const std::string& name() const;
  bool is_zero() const;

  /// Writes f(t) into out (size dimension()). Throws DomainError outside domain().
  void evaluate(double t, std::span<double> out) const;
  /// First component of f(t).
  double operator()(double t) const;
  /// Euclidean norm of f(t).
  double norm_at(double t) const;
  /// Points in (a, b) where f or its derivative may jump (grid nodes, bump
  /// support edges, component kinks), sorted.
  std::vector<double> breakpoints(double a, double b) const;

 private:
  explicit Signal(std::shared_ptr<const detail::SignalImpl> impl);
  std::shared_ptr<const detail::SignalImpl> impl_;
};

/// The smooth bump used by the spike train: support (-1/2, 1/2), H(0) = 1 and
/// unit integral.
double spike_bump(double s);

}  // namespace paps
