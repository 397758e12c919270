#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "paps/error.hpp"
#include "paps/signal.hpp"

using namespace paps;

TEST_CASE("registry closed forms") {
  CHECK(Signal::constant(3.0)(7.0) == 3.0);
  CHECK(Signal::sine(2.0, 3.0, 0.5)(1.2) == doctest::Approx(2.0 * std::sin(3.0 * 1.2 + 0.5)));
  CHECK(Signal::arctan_shift()(4.0) == doctest::Approx(std::atan(4.0) - std::numbers::pi / 2));
  const Signal q = Signal::quasi_periodic({{1.0, 1.0, 0.0}, {1.0, std::numbers::sqrt2, 0.0}});
  CHECK(q(2.5) == doctest::Approx(std::sin(2.5) + std::sin(std::numbers::sqrt2 * 2.5)));
  const Signal psi = Signal::psi1(1.0, std::numbers::sqrt2);
  const double t = 0.7;
  CHECK(psi(t) == doctest::Approx(std::sin(1.0 / (2.0 + std::cos(t) + std::cos(std::numbers::sqrt2 * t)))));
}

TEST_CASE("psi1 refuses a vanishing denominator") {
  // alpha = beta = 1: 2 + 2 cos t vanishes at t = pi
  const Signal psi = Signal::psi1(1.0, 1.0);
  CHECK_THROWS_AS(psi(std::numbers::pi), DomainError);
}

TEST_CASE("spike bump has unit integral and peak one") {
  CHECK(spike_bump(0.0) == doctest::Approx(1.0));
  CHECK(spike_bump(0.5) == 0.0);
  CHECK(spike_bump(-0.6) == 0.0);
  const double mass = oracle::gk([](double s) { return spike_bump(s); }, -0.5, 0.5);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spike train places bumps on 3^n (2Z + 1)") {
  const Signal phi = Signal::spike_train(2, 100.0);
  CHECK(phi(3.0) == doctest::Approx(1.0));   // n = 1 only
  CHECK(phi(15.0) == doctest::Approx(1.0));  // 3 * 5
  CHECK(phi(9.0) == doctest::Approx(2.0));   // 3 * 3 and 9 * 1
  CHECK(phi(105.0) == 0.0);                  // outside the window
  CHECK(phi(5.0) == 0.0);
  const auto kinks = phi.breakpoints(2.0, 4.0);
  CHECK(!kinks.empty());
}

TEST_CASE("grid signals interpolate linearly and refuse outside their domain") {
  const Signal g = Signal::grid(0.0, 0.5, 1, {0.0, 1.0, 4.0});
  CHECK(g(0.25) == doctest::Approx(0.5));
  CHECK(g(0.75) == doctest::Approx(2.5));
  CHECK_THROWS_AS(g(1.5), DomainError);
  CHECK_THROWS_AS(g(-0.1), DomainError);
}

TEST_CASE("vector signals, shifts and arithmetic") {
  const Signal v = Signal::vector(2, [](double t, std::span<double> out) {
    out[0] = t;
    out[1] = 2.0 * t;
  });
  double buf[2];
  v.evaluate(3.0, buf);
  CHECK(buf[1] == 6.0);
  CHECK(v.norm_at(1.0) == doctest::Approx(std::sqrt(5.0)));
  const Signal s = Signal::sine().shifted(0.5);
  CHECK(s(1.0) == doctest::Approx(std::sin(1.5)));
  const Signal sum = Signal::sine() + Signal::constant(1.0);
  CHECK(sum(0.3) == doctest::Approx(std::sin(0.3) + 1.0));
  const Signal prod = Signal::sine().times(Signal::constant(2.0));
  CHECK(prod(0.3) == doctest::Approx(2.0 * std::sin(0.3)));
  CHECK(Signal::constant(0.0).is_zero());
}
