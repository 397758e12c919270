#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "paps/funcspace.hpp"
#include "paps/signal.hpp"

namespace paps {

/// Nonnegative density rho of a measure mu(A) = integral of rho over A.
class MeasureDensity {
 public:
  enum class Kind { lebesgue, exp_left, table, custom };

  /// rho = 1.
  static MeasureDensity lebesgue();
  /// rho(t) = e^t for t <= 0 and 1 for t > 0.
  static MeasureDensity exp_left();
  /// Piecewise constant: values[k] on [breaks[k], breaks[k+1]); values.front()
  /// extends to -inf and values.back() to +inf.
  static MeasureDensity table(std::vector<double> breaks, std::vector<double> values);
  /// Arbitrary density. `satisfies_m` records the caller's assertion that the
  /// measure is translation quasi-invariant; it is not checked.
  static MeasureDensity custom(std::function<double(double)> rho, std::string name,
                               bool satisfies_m, std::vector<double> kinks = {});

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool satisfies_m() const { return satisfies_m_; }

  double operator()(double t) const;
  /// Points in (a, b) where rho is not smooth.
  std::vector<double> kinks(double a, double b) const;

 private:
  friend double measure_interval(const MeasureDensity&, double, double);
  MeasureDensity() = default;

  Kind kind_ = Kind::lebesgue;
  std::string name_ = "lebesgue";
  bool satisfies_m_ = true;
  std::vector<double> breaks_;
  std::vector<double> values_;
  std::function<double(double)> rho_;
  std::vector<double> custom_kinks_;
};

/// Reads a `t value` table (one pair per line, `#` comments) into a table density.
MeasureDensity load_density_table(const std::string& path);

/// mu([a, b]). Closed forms for the built-in kinds, adaptive quadrature otherwise.
double measure_interval(const MeasureDensity& density, double a, double b);

/// abs_tol bounds the error of the mean itself.
struct ErgodicOptions {
  double abs_tol = 1e-9;
  std::size_t max_intervals = 400000;
};

/// (1 / mu[-r, r]) * integral over [-r, r] of the unit-cell L^p norm of f
/// against mu.
double ergodic_mean(const Signal& signal, const MeasureDensity& density, StepanovExponent p,
                    double r, const ErgodicOptions& options = {});

/// mu({t in [-r, r] : |f(t)| >= epsilon}) / mu([-r, r]) on a midpoint grid.
double superlevel_ratio(const Signal& signal, const MeasureDensity& density, double epsilon,
                        double r, double step = 0.01);

DecayCurve ergodic_decay(const Signal& signal, const MeasureDensity& density, StepanovExponent p,
                         const std::vector<double>& ladder, const ErgodicOptions& options = {});

DecayCurve superlevel_decay(const Signal& signal, const MeasureDensity& density, double epsilon,
                            const std::vector<double>& ladder, double step = 0.01);

/// mu([-r, r]) along the ladder, for the infinite-total-mass growth check.
DecayCurve mass_growth(const MeasureDensity& density, const std::vector<double>& ladder);

/// True when each value exceeds its predecessor by at most rel_slack relative.
bool is_nonincreasing(const DecayCurve& curve, double rel_slack = 0.0);
bool is_strictly_decreasing(const DecayCurve& curve);

}  // namespace paps
