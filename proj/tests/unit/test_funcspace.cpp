#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "paps/error.hpp"
#include "paps/funcspace.hpp"
#include "paps/measure.hpp"

using namespace paps;
using std::numbers::pi;

namespace {
const StepanovExponent P1 = StepanovExponent::of(1.0);
const StepanovExponent P2 = StepanovExponent::of(2.0);
}  // namespace

TEST_CASE("conjugate exponents") {
  CHECK(StepanovExponent::of(1.0).q_infinite());
  CHECK(StepanovExponent::of(2.0).q == doctest::Approx(2.0));
  const auto e = StepanovExponent::of(3.0);
  CHECK(1.0 / e.p + 1.0 / e.q == doctest::Approx(1.0));
  CHECK_THROWS_AS(StepanovExponent::of(0.5), ArgumentError);
}

TEST_CASE("bochner slices") {
  const auto c = bochner_slice(Signal::constant(3.0), 7.0, 5);
  CHECK(c == std::vector<double>(5, 3.0));
  const auto s = bochner_slice(Signal::sine(), 0.0, 3);
  CHECK(s[1] == doctest::Approx(std::sin(0.5)));
  CHECK(s[2] == doctest::Approx(std::sin(1.0)));
  // f^b(t + tau)(s - tau) = f^b(t)(s): shifting t by one sample step moves the slice by one index
  const double tau = 0.25;
  const auto a = bochner_slice(Signal::sine(), 1.0, 5);
  const auto b = bochner_slice(Signal::sine(), 1.0 + tau, 5);
  for (std::size_t k = 1; k < 5; ++k) CHECK(b[k - 1] == doctest::Approx(a[k]));
  CHECK_THROWS_AS(bochner_slice(Signal::sine(), 0.0, 1), ArgumentError);
}

TEST_CASE("Stepanov norms: closed forms") {
  CHECK(bsp_norm(Signal::constant(-2.5), P2, {0.0, 3.0}).value == doctest::Approx(2.5));
  const Signal s2pi = Signal::sine(1.0, 2.0 * pi);
  for (Interval w : {Interval{0.0, 1.0}, Interval{-7.3, 4.1}}) {
    CHECK(std::abs(bsp_norm(s2pi, P1, w).value - 2.0 / pi) < 1e-6);
  }
  // arctan shift: decreasing magnitude, so the left edge wins
  const WindowedMax phi = bsp_norm(Signal::arctan_shift(), P1, {-50.0, 50.0});
  const double edge = oracle::arctan_gap_primitive(-49.0) - oracle::arctan_gap_primitive(-50.0);
  CHECK(phi.value > pi / 2);
  CHECK(phi.value < pi);
  CHECK(phi.value == doctest::Approx(edge).epsilon(1e-9));
  CHECK(phi.argmax == doctest::Approx(-50.0));
  CHECK_THROWS_AS(bsp_norm(Signal::sine(), P1, {0.0, 0.5}), ArgumentError);
}

TEST_CASE("Stepanov norm properties") {
  const std::vector<Signal> registry{Signal::sine(), Signal::quasi_periodic({{1, 1, 0}, {1, std::numbers::sqrt2, 0}}),
                                     Signal::arctan_shift(), Signal::psi1(1.0, std::numbers::sqrt2)};
  const Interval w{-20.0, 20.0};
  for (const Signal& f : registry) {
    double sup = 0.0;
    for (double t = w.lo; t <= w.hi + 1.0; t += 0.001) sup = std::max(sup, std::abs(f(t)));
    const double n1 = bsp_norm(f, P1, w, 0.05).value;
    const double n2 = bsp_norm(f, P2, w, 0.05).value;
    const double n3 = bsp_norm(f, StepanovExponent::of(3.0), w, 0.05).value;
    CHECK(n2 <= sup * (1 + 1e-9));
    CHECK(n1 <= n2 * (1 + 1e-9));
    CHECK(n2 <= n3 * (1 + 1e-9));
  }
}

TEST_CASE("cell norm of a signed signal splits at zero crossings") {
  // integral of |sin| over [0.5, 1.5] crosses no zero; over [3, 4] crosses pi
  const double want = (1.0 - std::cos(pi - 3.0)) + (1.0 - std::cos(4.0 - pi));
  CHECK(cell_lp_norm(Signal::sine(), 3.0, 1.0) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("translation defects") {
  CHECK(translation_defect(Signal::psi1(1.0, std::numbers::sqrt2), 0.0, P1, {-5.0, 5.0}).value == 0.0);
  for (int k = 1; k <= 3; ++k) {
    CHECK(translation_defect(Signal::sine(), 2.0 * pi * k, P2, {-10.0, 10.0}).value <= 1e-10);
  }
  // triangle bound: d(t1 + t2) <= d(t1) + d of the shifted signal at t2
  const Signal q = Signal::quasi_periodic({{1, 1, 0}, {1, std::numbers::sqrt2, 0}});
  const double t1 = 3.1;
  const double t2 = 4.4;
  const Interval w{-10.0, 10.0};
  const double lhs = translation_defect(q, t1 + t2, P2, w).value;
  const double rhs = translation_defect(q, t1, P2, {w.lo, w.hi}).value +
                     translation_defect(q.shifted(t1), t2, P2, w).value;
  CHECK(lhs <= rhs + 1e-9);
}

TEST_CASE("quasi-periodic signal has a good translation number in [0, 200]") {
  const Signal q = Signal::quasi_periodic({{1, 1, 0}, {1, std::numbers::sqrt2, 0}});
  const TranslationScan scan = find_translation_numbers(q, 0.2, P2, {0.0, 200.0}, {-20.0, 20.0});
  bool nontrivial = false;
  for (const auto& c : scan.clusters) nontrivial = nontrivial || (c.best_tau > 1.0 && c.best_defect <= 0.2);
  CHECK(nontrivial);
}

TEST_CASE("translation numbers of constants and of sin") {
  const TranslationScan c = find_translation_numbers(Signal::constant(2.0), 0.1, P1, {0.0, 5.0}, {-2.0, 2.0});
  CHECK(c.hits.size() == 501);
  REQUIRE(c.largest_gap.has_value());
  CHECK(*c.largest_gap == doctest::Approx(0.01));

  const TranslationScan s = find_translation_numbers(Signal::sine(), 0.05, P2, {0.0, 20.0}, {-5.0, 5.0});
  REQUIRE(!s.empty);
  bool near2pi = false;
  bool near4pi = false;
  for (const auto& cl : s.clusters) {
    near2pi = near2pi || std::abs(cl.best_tau - 2 * pi) < 1e-3;
    near4pi = near4pi || std::abs(cl.best_tau - 4 * pi) < 1e-3;
    // hits are where 2|sin(tau/2)| times the cell L2 factor is small
    CHECK(cl.best_defect <= 0.05);
  }
  CHECK(near2pi);
  CHECK(near4pi);
  CHECK(*s.largest_gap < 7.0);
  CHECK_THROWS_AS(find_translation_numbers(Signal::sine(), 0.0, P2, {0.0, 5.0}, {-1.0, 1.0}), ArgumentError);
}

TEST_CASE("psi1 translation scan") {
  const TranslationScan s =
      find_translation_numbers(Signal::psi1(1.0, std::numbers::sqrt2), 0.3, P1, {0.0, 500.0}, {-20.0, 20.0});
  REQUIRE(!s.empty);
  CHECK(s.hits.front() == 0.0);
  for (const auto& c : s.clusters) {
    CHECK(c.best_defect <= 0.3);
    CHECK(c.best_tau >= c.lo);
    CHECK(c.best_tau <= c.hi);
  }
}

TEST_CASE("uniform continuity modulus") {
  for (const auto& e : uniform_continuity_modulus(Signal::constant(1.0), {0.0, 5.0}, {0.1, 1.0})) {
    CHECK(e.modulus == 0.0);
  }
  const auto s = uniform_continuity_modulus(Signal::sine(), {-100.0, 100.0}, {0.1});
  CHECK(s[0].modulus <= 0.1);
  CHECK(s[0].modulus > 0.099);
}

TEST_CASE("psi1 modulus does not shrink with delta as the window grows") {
  const Signal psi = Signal::psi1(1.0, std::numbers::sqrt2);
  const double small = uniform_continuity_modulus(psi, {-100.0, 100.0}, {0.01}, 0.0005)[0].modulus;
  const double large = uniform_continuity_modulus(psi, {-10000.0, 10000.0}, {0.01}, 0.0005)[0].modulus;
  CHECK(large > small);
  CHECK(large > 10.0 * 0.01);  // far above a Lipschitz-type delta scaling
}

TEST_CASE("composition check") {
  const auto scenarios = composition_scenarios();
  REQUIRE(scenarios.size() == 3);
  const MeasureDensity theta = MeasureDensity::exp_left();
  const auto zero = composition_ergodic_check(scenarios[0].f, scenarios[0].x, scenarios[0].x1, theta, P1, {10.0, 100.0});
  CHECK(zero[0].value == 0.0);
  CHECK(zero[1].value == 0.0);
  const auto arc = composition_ergodic_check(scenarios[1].f, scenarios[1].x, scenarios[1].x1, theta, P1,
                                             {10.0, 100.0, 1000.0});
  CHECK(is_strictly_decreasing(arc));
  CHECK(arc.back().value <= 0.05);
  for (double r : {10.0, 100.0, 1000.0}) {
    const auto it = std::find_if(arc.begin(), arc.end(), [&](const DecayPoint& p) { return p.r == r; });
    CHECK(it->value == doctest::Approx(oracle::arctan_ergodic_mean(r)).epsilon(1e-7));
  }
  const auto psi = composition_ergodic_check(scenarios[2].f, scenarios[2].x, scenarios[2].x1, theta, P1, {100.0, 1000.0});
  CHECK(is_strictly_decreasing(psi));
}

TEST_CASE("psi1 composition mean matches an independent quadrature") {
  const auto sc = composition_scenarios()[2];
  auto g = [&](double s) { return std::abs(sc.f(s, sc.x(s)) - sc.f(s, sc.x1(s))); };
  // Fubini form of the p = 1 mean under exp-left, integrated in small pieces
  const double r = 10.0;
  auto weight = [&](double s) { return oracle::exp_left_mass(std::max(s - 1.0, -r), std::min(s, r)); };
  const double num = oracle::gk_pieces([&](double s) { return g(s) * weight(s); }, -r, r + 1.0, 0.05);
  const double want = num / oracle::exp_left_mass(-r, r);
  const double got = composition_ergodic_check(sc.f, sc.x, sc.x1, MeasureDensity::exp_left(), P1, {r})[0].value;
  CHECK(got == doctest::Approx(want).epsilon(1e-7));
}
