#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "paps/quadrature.hpp"

using namespace paps;

TEST_CASE("gauss-legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (std::size_t n : {2u, 4u, 8u, 16u, 32u, 64u, 5u, 12u}) {
    const GaussRule& rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const auto deg = static_cast<int>(2 * n - 1);
    const double got = integrate_gauss([&](double x) { return std::pow(x, deg - 1) + std::pow(x, deg); }, 0.0, 1.0, rule);
    CHECK(got == doctest::Approx(1.0 / deg + 1.0 / (deg + 1)).epsilon(1e-12));
  }
}

TEST_CASE("cached and freshly built rules agree") {
  const GaussRule fresh = make_gauss_legendre(24);
  const GaussRule& cached = gauss_legendre(24);
  for (std::size_t i = 0; i < 24; ++i) {
    CHECK(fresh.nodes[i] == doctest::Approx(cached.nodes[i]).epsilon(1e-15));
  }
}

TEST_CASE("adaptive gauss-kronrod resolves kinks given as breakpoints") {
  auto f = [](double x) { return std::abs(x - 0.3) + std::sqrt(std::abs(x)); };
  const double exact = oracle::gk([](double x) { return std::abs(x - 0.3); }, -1.0, 0.3) +
                       oracle::gk([](double x) { return std::abs(x - 0.3); }, 0.3, 2.0) +
                       boost::math::quadrature::tanh_sinh<double>().integrate(
                           [](double x) { return std::sqrt(std::abs(x)); }, -1.0, 0.0) +
                       boost::math::quadrature::tanh_sinh<double>().integrate(
                           [](double x) { return std::sqrt(std::abs(x)); }, 0.0, 2.0);
  const double cuts[] = {0.0, 0.3};
  AdaptiveOptions opt;
  opt.abs_tol = 1e-12;
  const QuadratureResult r = adaptive_gauss_kronrod(f, -1.0, 2.0, opt, cuts);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-11));
  CHECK(r.error <= 1e-10);
}

TEST_CASE("adaptive gauss-kronrod over a long oscillatory range") {
  AdaptiveOptions opt;
  opt.abs_tol = 1e-10;
  const QuadratureResult r = adaptive_gauss_kronrod([](double x) { return std::cos(x); }, 0.0, 200.0, opt, {}, 1.0);
  CHECK(r.value == doctest::Approx(std::sin(200.0)).epsilon(1e-10));
}
