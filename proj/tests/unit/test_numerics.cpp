#include <doctest.h>

#include <cmath>
#include <random>

#include "splitkernel/errors.hpp"
#include "splitkernel/numerics.hpp"

using namespace splitkernel;

namespace {
// Closed-form integral of x^a over (lo, hi) for a != -1.
double power_integral(double a, double lo, double hi) {
  const double e = a + 1.0;
  const double top = std::isinf(hi) ? 0.0 : std::pow(hi, e);
  const double bottom = lo == 0.0 ? 0.0 : std::pow(lo, e);
  return (top - bottom) / e;
}
}  // namespace

TEST_CASE("integrate: polynomial on the unit interval") {
  const auto r = integrate([](double x) { return x; }, Interval(0, 1), 1e-10);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("integrate: inverse square on the tail") {
  const auto r = integrate([](double x) { return 1.0 / (x * x); }, Interval(1, kInf), 1e-10);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate: log divergence is detected") {
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, Interval(1, kInf), 1e-10),
                  DivergentIntegral);
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, Interval(0, 1), 1e-10),
                  DivergentIntegral);
}

TEST_CASE("integrate: endpoint singularities and slow decay") {
  CHECK(integrate([](double x) { return std::pow(x, -0.9); }, Interval(0, 1), 1e-10).value ==
        doctest::Approx(10.0).epsilon(1e-8));
  CHECK(integrate([](double x) { return std::pow(x, -1.1); }, Interval(1, kInf), 1e-10).value ==
        doctest::Approx(10.0).epsilon(1e-8));
  CHECK(integrate([](double x) { return std::exp(-x); }, Interval(0, kInf), 1e-10).value ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate: invalid intervals") {
  CHECK_THROWS_AS(Interval(2, 1), ParamOutOfRange);
  CHECK_THROWS_AS(Interval(-1, 1), ParamOutOfRange);
}

TEST_CASE("integrate is linear on random power pairs") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> expo(-0.8, 2.0), coef(-3, 3), end(0.5, 20);
  for (int i = 0; i < 25; ++i) {
    const double a = expo(rng), b = expo(rng), al = coef(rng), be = coef(rng), hi = end(rng);
    const double tol = 1e-10;
    auto f = [a](double x) { return std::pow(x, a); };
    auto g = [b](double x) { return std::pow(x, b); };
    const Interval iv(0, hi);
    const double lhs = integrate([&](double x) { return al * f(x) + be * g(x); }, iv, tol).value;
    const double F = integrate(f, iv, tol).value, G = integrate(g, iv, tol).value;
    const double rhs = al * F + be * G;
    CHECK(std::abs(lhs - rhs) <= 10 * tol * (std::abs(al * F) + std::abs(be * G)));
    CHECK(F == doctest::Approx(power_integral(a, 0, hi)).epsilon(1e-9));
  }
}

TEST_CASE("integrate is additive over adjacent intervals") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> expo(-0.9, 1.5), pt(0.1, 10);
  for (int i = 0; i < 25; ++i) {
    const double a = expo(rng);
    double b = pt(rng), c = pt(rng);
    if (b > c) std::swap(b, c);
    auto f = [a](double x) { return std::pow(x, a) * std::exp(-x); };
    const double tol = 1e-10;
    const double ab = integrate(f, Interval(0, b), tol).value;
    const double bc = integrate(f, Interval(b, c), tol).value;
    const double ac = integrate(f, Interval(0, c), tol).value;
    CHECK(std::abs(ab + bc - ac) <= 10 * tol * ac);
  }
}

TEST_CASE("CompensatedSum recovers cancelled digits") {
  CompensatedSum s;
  s += 1.0;
  s += 1e100;
  s += 1.0;
  s += -1e100;
  CHECK(s.value() == 2.0);
}

TEST_CASE("log_grid: endpoints and density") {
  const auto g = log_grid(0.01, 100, 4);
  REQUIRE(g.size() == 17);
  CHECK(g.front() == doctest::Approx(0.01));
  CHECK(g.back() == doctest::Approx(100));
  CHECK(g[4] == doctest::Approx(0.1));
  const auto d = log_grid(kDefaultGridLo, kDefaultGridHi, kDefaultPerDecade);
  CHECK(d.size() == 12 * 16 + 1);
  const auto odd = log_grid(1, 50, 1);
  CHECK(odd.back() == doctest::Approx(50));
  CHECK(odd[1] == doctest::Approx(10));
}

TEST_CASE("sup_scan: constant, power, and infinite values") {
  const auto grid = log_grid(0.01, 100, 8);
  const auto c = sup_scan([](double) { return 1.0; }, grid);
  CHECK(c.supEstimate == doctest::Approx(1.0));
  CHECK(c.leftSlope == doctest::Approx(0.0));
  CHECK(c.rightSlope == doctest::Approx(0.0));

  const std::vector<double> three{1, 10, 100};
  const auto p = sup_scan([](double r) { return std::sqrt(r); }, three);
  CHECK(p.supEstimate == doctest::Approx(10.0));
  CHECK(p.rightSlope == doctest::Approx(0.5));

  const auto inf = sup_scan([](double r) { return r == 1.0 ? kInf : 1.0; }, three);
  CHECK(std::isinf(inf.supEstimate));
}

TEST_CASE("sup_scan: monomial slopes over four decades") {
  for (double s : {-1.3, -0.5, 0.0, 0.07, 0.8, 2.0}) {
    const auto scan = sup_scan([s](double r) { return std::pow(r, s); }, log_grid(1e-2, 1e2, 16));
    CHECK(std::abs(scan.leftSlope - s) <= 1e-3);
    CHECK(std::abs(scan.rightSlope - s) <= 1e-3);
  }
}
