#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "paps/error.hpp"
#include "paps/funcspace.hpp"
#include "paps/measure.hpp"

using namespace paps;

namespace {
const StepanovExponent P1 = StepanovExponent::of(1.0);

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string("/tmp/paps_measure_") + name;
  std::ofstream(path) << body;
  return path;
}
}  // namespace

TEST_CASE("interval masses") {
  CHECK(measure_interval(MeasureDensity::lebesgue(), -7.0, 7.0) == doctest::Approx(14.0));
  CHECK(measure_interval(MeasureDensity::lebesgue(), 3.0, 3.0) == 0.0);
  CHECK(measure_interval(MeasureDensity::exp_left(), -5.0, 5.0) ==
        doctest::Approx(6.0 - std::exp(-5.0)).epsilon(1e-14));
  CHECK(measure_interval(MeasureDensity::exp_left(), -5.0, 5.0) ==
        doctest::Approx(oracle::gk(oracle::exp_left, -5.0, 0.0) + 5.0).epsilon(1e-12));
  CHECK_THROWS_AS(measure_interval(MeasureDensity::lebesgue(), 1.0, 0.0), ArgumentError);
}

TEST_CASE("mass is additive") {
  const MeasureDensity custom = MeasureDensity::custom([](double t) { return 1.0 + 0.5 * std::sin(t); }, "wavy", true);
  const MeasureDensity table = MeasureDensity::table({-1.0, 0.0, 2.0}, {0.5, 1.0, 3.0});
  for (const MeasureDensity& d : {MeasureDensity::lebesgue(), MeasureDensity::exp_left(), custom, table}) {
    for (auto [a, b, c] : {std::tuple{-3.0, -0.5, 4.0}, std::tuple{-10.0, 0.0, 0.1}, std::tuple{1.0, 2.0, 3.0}}) {
      CHECK(std::abs(measure_interval(d, a, c) - measure_interval(d, a, b) - measure_interval(d, b, c)) <= 1e-10);
    }
  }
}

TEST_CASE("registry masses grow without bound") {
  for (const MeasureDensity& d : {MeasureDensity::lebesgue(), MeasureDensity::exp_left()}) {
    const DecayCurve m = mass_growth(d, {10.0, 100.0, 1000.0, 10000.0});
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i].value > m[i - 1].value);
    CHECK(m.back().value >= 10000.0);
  }
}

TEST_CASE("density tables") {
  const std::string ok = temp_file("ok.txt", "# t value\n-1 0.5\n0 1\n\n2 3\n");
  const MeasureDensity d = load_density_table(ok);
  CHECK(!d.satisfies_m());
  CHECK(d(-0.5) == doctest::Approx(0.5));
  CHECK(d(1.0) == doctest::Approx(1.0));
  CHECK(d(5.0) == doctest::Approx(3.0));
  const std::string bad = temp_file("bad.txt", "-1 0.5\n0 oops\n");
  try {
    load_density_table(bad);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  const std::string neg = temp_file("neg.txt", "-1 0.5\n0 -1\n");
  CHECK_THROWS_AS(load_density_table(neg), ConfigError);
  CHECK_THROWS_AS(load_density_table("/nonexistent/table.txt"), IoError);
}

TEST_CASE("ergodic means: trivial cases") {
  CHECK(ergodic_mean(Signal::constant(0.0), MeasureDensity::exp_left(), P1, 100.0) == 0.0);
  CHECK(ergodic_mean(Signal::constant(1.0), MeasureDensity::lebesgue(), StepanovExponent::of(2.0), 50.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ergodic_mean(Signal::sine(), MeasureDensity::lebesgue(), P1, 0.0), ArgumentError);
}

TEST_CASE("ergodic mean of the arctan shift decays under exp-left") {
  const DecayCurve c = ergodic_decay(Signal::arctan_shift(), MeasureDensity::exp_left(), P1, {10.0, 100.0, 1000.0});
  CHECK(is_strictly_decreasing(c));
  CHECK(c.back().value <= 0.05);
  for (const auto& p : c) CHECK(p.value == doctest::Approx(oracle::arctan_ergodic_mean(p.r)).epsilon(1e-8));
  const DecayCurve far = ergodic_decay(Signal::arctan_shift(), MeasureDensity::exp_left(), P1, {100.0, 1000.0, 10000.0});
  CHECK(is_strictly_decreasing(far));
}

TEST_CASE("p = 2 ergodic mean uses the nested route and agrees with quadrature") {
  const Signal f = Signal::arctan_shift();
  const double r = 20.0;
  auto cell = [&](double t) {
    const double v = oracle::gk([&](double s) { return std::pow(f(s), 2); }, t, t + 1.0);
    return std::sqrt(v);
  };
  const double want = oracle::gk_pieces([&](double t) { return oracle::exp_left(t) * cell(t); }, -r, r, 1.0) /
                      oracle::exp_left_mass(-r, r);
  CHECK(ergodic_mean(f, MeasureDensity::exp_left(), StepanovExponent::of(2.0), r) ==
        doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("ergodic mean agrees with stratified Monte Carlo") {
  const Signal f = Signal::sine() + Signal::arctan_shift();
  auto cell = [&](double t) { return oracle::gk([&](double s) { return std::abs(f(s)); }, t, t + 1.0); };
  const double r = 30.0;
  const double mc = oracle::stratified_mc_exp_left(cell, r, 50000, 20261016u);
  const double got = ergodic_mean(f, MeasureDensity::exp_left(), P1, r);
  CHECK(std::abs(got - mc) <= 1e-3 * std::abs(mc));
}

TEST_CASE("translation consistency under Lebesgue measure") {
  const Signal f = Signal::arctan_shift() + Signal::sine();
  const double r = 200.0;
  const double tau = 3.0;
  const double a = ergodic_mean(f, MeasureDensity::lebesgue(), P1, r);
  const double b = ergodic_mean(f.shifted(tau), MeasureDensity::lebesgue(), P1, r);
  // the two windows differ by tau at each edge, where the cell norm is at most 1 + pi
  const double edge = 2.0 * tau * (1.0 + std::numbers::pi);
  CHECK(std::abs(a - b) <= 2.0 * edge / (2.0 * r));
}

TEST_CASE("superlevel ratios") {
  CHECK(superlevel_ratio(Signal::constant(0.0), MeasureDensity::lebesgue(), 0.1, 10.0) == 0.0);
  CHECK(superlevel_ratio(Signal::constant(1.0), MeasureDensity::lebesgue(), 0.5, 10.0) == doctest::Approx(1.0));
  const DecayCurve c = superlevel_decay(Signal::arctan_shift(), MeasureDensity::exp_left(), 0.1, {10.0, 100.0, 1000.0});
  CHECK(is_strictly_decreasing(c));
  CHECK(c.back().value <= 0.03);
  // |f| >= 0.1 exactly on t <= tan(pi/2 - 0.1)
  const double edge = std::tan(std::numbers::pi / 2 - 0.1);
  const double want = oracle::exp_left_mass(-1000.0, edge) / oracle::exp_left_mass(-1000.0, 1000.0);
  CHECK(std::abs(c.back().value - want) <= 0.01 / 1000.0);
  CHECK_THROWS_AS(superlevel_ratio(Signal::sine(), MeasureDensity::lebesgue(), 0.0, 10.0), ArgumentError);
}

TEST_CASE("monotonicity helpers") {
  CHECK(is_nonincreasing({{1, 1.0}, {2, 1.04}}, 0.05));
  CHECK(!is_nonincreasing({{1, 1.0}, {2, 1.06}}, 0.05));
  CHECK(!is_strictly_decreasing({{1, 1.0}, {2, 1.0}}));
}
