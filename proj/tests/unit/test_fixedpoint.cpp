#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "paps/error.hpp"
#include "paps/fixedpoint.hpp"

using namespace paps;

namespace {
GridField scalar_field(double value, std::size_t n = 3) {
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<double>(i);
  return GridField(times, 1, value);
}

GridMap pointwise(std::function<double(double)> g) {
  return [g](const GridField& u) {
    GridField out = u;
    for (double& v : out.values) v = g(v);
    return out;
  };
}
}  // namespace

TEST_CASE("grid fields") {
  GridField f({0.0, 1.0, 2.0}, 2);
  f.at(1, 0) = -3.0;
  f.at(2, 1) = 2.0;
  CHECK(f.sup_norm() == 3.0);
  CHECK(f.row(1)[0] == -3.0);
  const Signal s = f.to_signal();
  CHECK(s.dimension() == 2);
  CHECK(sup_distance(f, GridField({0.0, 1.0, 2.0}, 2)) == 3.0);
  const GridField g = GridField::sample(Signal::sine(), {0.0, 1.0});
  CHECK(g.at(1, 0) == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("identity map converges at the first step") {
  const PicardResult r = picard_iterate(pointwise([](double x) { return x; }), scalar_field(0.7), {});
  CHECK(r.report.converged);
  CHECK(r.report.iterations == 1);
  CHECK(r.report.final_residual == 0.0);
  CHECK(r.solution.values == std::vector<double>(3, 0.7));
}

TEST_CASE("halving map") {
  PicardOptions opt;
  opt.tolerance = 1e-8;
  const PicardResult r = picard_iterate(pointwise([](double x) { return 0.5 * x; }), scalar_field(1.0), opt);
  CHECK(r.report.converged);
  // residual n is 2^-n, first below 1e-8 at n = 27
  CHECK(r.report.iterations == 27);
  for (double q : r.report.ratios) CHECK(q == doctest::Approx(0.5));
  CHECK(r.report.max_ratio_after_burn_in() == doctest::Approx(0.5));
  CHECK(r.report.residuals_nonincreasing_after_burn_in());
  CHECK(r.report.final_residual == doctest::Approx(std::ldexp(1.0, -28)));
}

TEST_CASE("nonlinear scalar map against bisection") {
  auto g = [](double x) { return 0.5 * x + 0.1 * std::sin(x) + 1.0; };
  const double root = oracle::bisect([&](double x) { return g(x) - x; }, 0.0, 10.0);
  PicardOptions opt;
  opt.tolerance = 1e-13;
  const PicardResult a = picard_iterate(pointwise(g), scalar_field(0.0), opt);
  const PicardResult b = picard_iterate(pointwise(g), scalar_field(-25.0), opt);
  CHECK(a.report.converged);
  CHECK(b.report.converged);
  CHECK(std::abs(a.solution.values[0] - root) <= 1e-12);
  CHECK(std::abs(a.solution.values[0] - b.solution.values[0]) <= 1e-12);
  // the rate approaches |g'(root)|
  CHECK(a.report.ratios.back() == doctest::Approx(std::abs(0.5 + 0.1 * std::cos(root))).epsilon(1e-3));
}

TEST_CASE("odd map with the fixed point at zero") {
  auto g = [](double x) { return 0.5 * x + 0.1 * std::sin(x); };
  const double root = oracle::bisect([&](double x) { return g(x) - x; }, -1.0, 2.0);
  PicardOptions opt;
  opt.tolerance = 1e-10;
  const PicardResult r = picard_iterate(pointwise(g), scalar_field(3.0), opt);
  REQUIRE(r.report.converged);
  CHECK(r.report.final_residual <= opt.tolerance);
  CHECK(r.report.residuals_nonincreasing_after_burn_in());
  CHECK(std::abs(r.solution.values[0] - root) <= 1e-8);
}

TEST_CASE("non-convergence is reported") {
  PicardOptions opt;
  opt.max_iterations = 10;
  const PicardResult r = picard_iterate(pointwise([](double x) { return 1.0 - x; }), scalar_field(0.0), opt);
  CHECK(!r.report.converged);
  CHECK(r.report.iterations == 10);
  CHECK(r.report.residuals.size() == 10);
  CHECK(r.report.final_residual == doctest::Approx(1.0));
}

TEST_CASE("map and observer failures carry the iteration index") {
  std::size_t calls = 0;
  PicardOptions opt;
  opt.tolerance = 1e-300;
  opt.max_iterations = 10;
  GridMap drift = [&](const GridField& u) {
    if (++calls == 3) throw std::runtime_error("boom");
    GridField out = u;
    for (double& v : out.values) v += 1.0;
    return out;
  };
  try {
    picard_iterate(drift, scalar_field(0.0), opt);
    FAIL("expected IterationError");
  } catch (const IterationError& e) {
    CHECK(e.iteration() == 3);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
  }
  opt.observer = [](std::size_t n, const GridField&) {
    if (n == 2) throw DomainError("left the ball");
  };
  calls = 100;
  try {
    picard_iterate(drift, scalar_field(0.0), opt);
    FAIL("expected IterationError");
  } catch (const IterationError& e) {
    CHECK(e.iteration() == 2);
  }
  CHECK_THROWS_AS(picard_iterate(drift, scalar_field(0.0), PicardOptions{0.0, 5, {}}), ArgumentError);
}

TEST_CASE("contraction probes") {
  const std::vector<double> eps{1e-3, 1e-2, 1e-1, 1.0};
  auto pairs = annulus_pairs(-10.0, 10.0, eps);
  for (int i = -20; i <= 20; ++i) {
    const double x = 1e-6 * i;
    pairs.emplace_back(x, x + 1e-7);
  }

  const ProbeReport half = contraction_probe([](double x) { return 0.5 * x; }, grid_pairs(-5.0, 5.0, 41), eps);
  CHECK(half.sup_ratio == doctest::Approx(0.5));
  CHECK(half.all_passed);

  const ProbeReport mk = contraction_probe([](double x) { return std::abs(x) / (1.0 + std::abs(x)); }, pairs, eps);
  CHECK(mk.sup_ratio >= 0.999);
  CHECK(std::abs(mk.argmax.first) <= 1e-3);
  CHECK(mk.all_passed);
  for (const auto& c : mk.checks) {
    CHECK(!c.vacuous);
    CHECK(c.worst_image < c.epsilon);
  }

  const ProbeReport dbl = contraction_probe([](double x) { return 2.0 * x; }, pairs, eps);
  CHECK(dbl.sup_ratio == doctest::Approx(2.0));
  CHECK(!dbl.all_passed);
  for (const auto& c : dbl.checks) CHECK(!c.passed);

  CHECK_THROWS_AS(contraction_probe([](double x) { return x; }, {{1.0, 1.0}}, eps), ArgumentError);
}

TEST_CASE("time grids") {
  const auto n = TimeGrid{0.0, 1.0, 0.3}.nodes();
  CHECK(n.size() == 5);
  CHECK(n.back() == 1.0);
  CHECK(TimeGrid{0.0, 1.0, 0.25}.nodes().size() == 5);
  CHECK_THROWS_AS(TimeGrid({1.0, 0.0, 0.1}).nodes(), ConfigError);
  SolverConfig c;
  c.tolerance = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
