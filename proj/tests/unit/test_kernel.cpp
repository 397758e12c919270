#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "paps/error.hpp"
#include "paps/kernel.hpp"
#include "paps/mittag_leffler.hpp"

using namespace paps;

TEST_CASE("spectrum validation") {
  const auto d = FractionalKernelSpec::dirichlet(0.75, 4);
  CHECK(d.spectrum == std::vector<double>{1.0, 4.0, 9.0, 16.0});
  CHECK_THROWS_AS((FractionalKernelSpec{1.0, {1.0}}.validate()), ArgumentError);
  CHECK_THROWS_AS((FractionalKernelSpec{0.5, {2.0, 1.0}}.validate()), ArgumentError);
  CHECK_THROWS_AS((FractionalKernelSpec{0.5, {0.0}}.validate()), ArgumentError);
}

TEST_CASE("resolvent limits") {
  // t^(1 - gamma) r(t) -> 1 / Gamma(gamma) as t -> 0
  const double t = 1e-10;
  CHECK(resolvent(0.75, 1.0, t) * std::pow(t, 0.25) == doctest::Approx(1.0 / std::tgamma(0.75)).epsilon(1e-6));
  // gamma -> 1 recovers exp(-lambda t)
  CHECK(resolvent(0.999, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(5e-3));
  CHECK_THROWS_AS(resolvent(0.75, 1.0, 0.0), ArgumentError);
}

TEST_CASE("resolvent at gamma = 1/2 against the erfc closed form") {
  // t^(-1/2) E_{1/2,1/2}(-lambda t^(1/2)) with E_{1/2,1/2}(z) = 1/sqrt(pi) + z exp(z^2) erfc(-z)
  for (auto [lambda, t] : {std::pair{4.0, 10.0}, std::pair{1.0, 0.3}, std::pair{2.0, 3.0}}) {
    const double z = -lambda * std::sqrt(t);
    const double ml = 1.0 / std::sqrt(std::numbers::pi) + z * oracle::ml_half_one(z);
    const double want = ml / std::sqrt(t);
    CHECK(resolvent(0.5, lambda, t) == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("resolvent is positive and decreasing in lambda") {
  for (double gamma : {0.3, 0.6, 0.9}) {
    for (double t : log_grid(1e-4, 1e4, 40)) {
      double prev = resolvent(gamma, 0.5, t);
      CHECK(prev > 0.0);
      for (double lambda : {1.0, 2.0, 8.0, 50.0}) {
        const double v = resolvent(gamma, lambda, t);
        CHECK(v > 0.0);
        CHECK(v <= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("kernel mass identity") {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double gamma : {0.6, 0.75, 0.9}) {
    for (double T : {0.5, 3.0, 20.0}) {
      const double numeric = ts.integrate([&](double s) { return resolvent(gamma, 2.0, s); }, 0.0, T);
      CHECK(std::abs(resolvent_integral(gamma, 2.0, T) - numeric) <= 1e-6);
      CHECK(resolvent_integral(gamma, 2.0, T) + resolvent_tail(gamma, 2.0, T) == doctest::Approx(0.5));
    }
  }
}

TEST_CASE("S constant") {
  const SGammaConstant c = s_gamma_constant(0.75, 2.0);
  CHECK(c.q == doctest::Approx(2.0));
  CHECK(std::abs(c.series - boost::math::zeta(1.75)) <= 1e-12);
  CHECK(c.series_tail_lower <= c.series_tail_upper);
  CHECK(std::abs(c.integral_direct - std::sqrt(2.0)) <= 1e-9);
  CHECK(std::abs(c.integral_printed - std::sqrt(1.5)) <= 1e-12);
  CHECK(c.total == doctest::Approx(c.series + c.integral_direct));
  CHECK_THROWS_AS(s_gamma_constant(0.5, 2.0), DivergenceError);
  CHECK_THROWS_AS(s_gamma_constant(0.4, 2.0), DivergenceError);

  // the series falls as gamma grows, the integral term grows as q(1 - gamma) approaches 1
  double prev = s_gamma_constant(0.6, 2.0).series;
  for (double g : {0.7, 0.8, 0.9}) {
    const double s = s_gamma_constant(g, 2.0).series;
    CHECK(s < prev);
    prev = s;
  }
  double prev_total = s_gamma_constant(0.6, 2.0).total;
  for (double g : {0.75, 0.9}) {
    const double t = s_gamma_constant(g, 2.0).total;
    CHECK(t < prev_total);
    prev_total = t;
  }
  // p = 1: q infinite, the integral term is the sup of s^(gamma - 1) which diverges
  CHECK_THROWS_AS(s_gamma_constant(0.75, 1.0), DivergenceError);
}

TEST_CASE("S constant series against an independent zeta") {
  for (double g : {0.6, 0.75, 0.9}) {
    for (double p : {2.0, 3.0, 4.0}) {
      if (g * p <= 1.0) continue;
      const SGammaConstant c = s_gamma_constant(g, p);
      const double q = p / (p - 1.0);
      CHECK(std::abs(c.series - boost::math::zeta(g + 1.0)) <= 1e-11);
      CHECK(c.integral_direct == doctest::Approx(std::pow(1.0 + q * (g - 1.0), -1.0 / q)).epsilon(1e-13));
    }
  }
}

TEST_CASE("kernel bounds") {
  for (double gamma : {0.6, 0.75, 0.9}) {
    const auto spec = FractionalKernelSpec::dirichlet(gamma, 4);
    const KernelBounds coarse = verify_kernel_bounds(spec, log_grid(1e-6, 1e6, 400));
    const KernelBounds fine = verify_kernel_bounds(spec, log_grid(1e-6, 1e6, 800));
    REQUIRE(std::isfinite(coarse.c_small));
    REQUIRE(std::isfinite(coarse.c_large));
    CHECK(std::abs(fine.c_small / coarse.c_small - 1.0) <= 0.05);
    CHECK(std::abs(fine.c_large / coarse.c_large - 1.0) <= 0.05);
    CHECK(std::abs(coarse.c_small * std::tgamma(gamma) - 1.0) <= 0.05);
    // E_{gamma,gamma}(-x) <= 1 / Gamma(gamma)
    CHECK(coarse.c_small <= 1.0 / std::tgamma(gamma) * (1 + 1e-12));
    // large-t tail of mode 1: t^(-1-gamma) / |Gamma(-gamma)|
    CHECK(coarse.c_large >= 0.99 / std::abs(std::tgamma(-gamma)));
    CHECK(coarse.small_points + coarse.large_points == 400);
  }
  const KernelBounds none = verify_kernel_bounds(FractionalKernelSpec::dirichlet(0.75, 2), {});
  CHECK(none.c_small == 0.0);
  CHECK(none.c_large == 0.0);
}

TEST_CASE("sum of exponentials") {
  for (double gamma : {0.3, 0.6, 0.75, 0.9}) {
    for (double lambda : {1.0, 25.0}) {
      const ExponentialSum es(gamma, lambda, 1e-3, 1e3);
      CHECK(es.size() > 0);
      for (double w : es.weights()) CHECK(w > 0.0);
      for (double tau : log_grid(1e-3, 1e3, 60)) {
        const double want = resolvent(gamma, lambda, tau);
        CHECK(std::abs(es(tau) - want) <= 1e-8 * want + 1e-12);
      }
    }
  }
}
