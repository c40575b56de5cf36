#include <doctest.h>

#include <cmath>
#include <random>

#include "splitkernel/errors.hpp"
#include "splitkernel/spaces.hpp"

using namespace splitkernel;

TEST_CASE("conjugate exponents") {
  CHECK(conjugate(2.0).value() == 2.0);
  CHECK(conjugate(1.0).is_infinite());
  CHECK(conjugate(4.0).value() == doctest::Approx(4.0 / 3.0));
  CHECK(conjugate(Exponent::infinity()).value() == 1.0);
  CHECK_THROWS_AS(Exponent(0.5), ParamOutOfRange);
}

TEST_CASE("exponent parsing") {
  CHECK(parse_exponent("inf").is_infinite());
  CHECK(parse_exponent("1.5").value() == 1.5);
  CHECK(format_exponent(Exponent::infinity()) == "inf");
  CHECK_THROWS_AS(parse_exponent("abc"), ConfigError);
}

TEST_CASE("weight parsing round trip") {
  const auto w = parse_weight("2*x^-0.5*(1+x)^1.5");
  CHECK(w.c() == 2.0);
  CHECK(w.a() == -0.5);
  CHECK(w.b() == 1.5);
  CHECK(parse_weight(format_weight(w)) == w);
  CHECK(parse_weight("x^0") == PowerLogWeight::one());
  CHECK(parse_weight("(1+x)^-1").b() == -1.0);
  CHECK(w(4.0) == doctest::Approx(2.0 * 0.5 * std::pow(5.0, 1.5)));
  CHECK_THROWS_AS(parse_weight("y^2"), ConfigError);
}

TEST_CASE("weight algebra") {
  const PowerLogWeight a(2, 0.5, 1), b(3, -1, 0.5);
  CHECK((a * b)(1.7) == doctest::Approx(a(1.7) * b(1.7)));
  CHECK(a.inverse()(0.3) == doctest::Approx(1.0 / a(0.3)));
  CHECK(a.pow(2.5)(3.0) == doctest::Approx(std::pow(a(3.0), 2.5)));
}

TEST_CASE("weighted_norm examples") {
  const auto one = PowerLogWeight::one();
  CHECK(weighted_norm([](double) { return 1.0; }, one, 2.0, Interval(0, 4)) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(weighted_norm([](double x) { return x; }, one, 2.0, Interval(0, 1)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(weighted_norm([](double x) { return 1.0 / x; }, one, 2.0, Interval(1, kInf)) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::isinf(weighted_norm([](double) { return 1.0; }, one, 2.0, Interval(1, kInf))));
  CHECK(weighted_norm([](double x) { return x * std::exp(-x); }, one, Exponent::infinity(),
                      Interval(0, kInf)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("powerlog_norm_class examples") {
  auto c = powerlog_norm_class(PowerLogWeight::power(-0.5), 2.0, Endpoint::Origin);
  CHECK(c.localExponent == doctest::Approx(-1.0));
  CHECK(c.verdict == Finiteness::Infinite);
  c = powerlog_norm_class(PowerLogWeight::power(-0.4), 2.0, Endpoint::Origin);
  CHECK(c.localExponent == doctest::Approx(-0.8));
  CHECK(c.verdict == Finiteness::Finite);
  c = powerlog_norm_class(PowerLogWeight::power(-1), 2.0, Endpoint::Infinity);
  CHECK(c.localExponent == doctest::Approx(-2.0));
  CHECK(c.verdict == Finiteness::Finite);
  CHECK(powerlog_norm_class(PowerLogWeight(1, -0.1, 0), Exponent::infinity(), Endpoint::Origin)
            .verdict == Finiteness::Infinite);
  CHECK(powerlog_norm_class(PowerLogWeight(1, 0.5, -0.5), Exponent::infinity(), Endpoint::Infinity)
            .verdict == Finiteness::Finite);
}

TEST_CASE("powerlog_norm: closed form and suprema") {
  // ||x^-1||_{L_2(1,inf)} = 1, ||x||_{L_2(0,1)} = 1/sqrt(3)
  CHECK(powerlog_norm(PowerLogWeight::power(-1), 2.0, Interval(1, kInf)) == doctest::Approx(1.0));
  CHECK(powerlog_norm(PowerLogWeight::power(1), 2.0, Interval(0, 1)) ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(std::isinf(powerlog_norm(PowerLogWeight::power(-0.5), 2.0, Interval(0, 1))));
  // x/(1+x)^2 peaks at x = 1 with value 1/4
  CHECK(powerlog_sup(PowerLogWeight(1, 1, -2), Interval(0, kInf)) == doctest::Approx(0.25));
  // (int_0^inf x^2 (1+x)^-6)^(1/2) = B(3,3)^(1/2) = (1/30)^(1/2)
  CHECK(powerlog_norm(PowerLogWeight(1, 1, -3), 2.0, Interval(0, kInf)) ==
        doctest::Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-8));
}

TEST_CASE("weighted_norm is absolutely homogeneous") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> expo(-0.4, 1.0), lam(-5, 5);
  const double tol = 1e-10;
  for (int i = 0; i < 20; ++i) {
    const double a = expo(rng), l = lam(rng);
    const PowerLogWeight v(1.0, std::abs(expo(rng)), 0.0);
    auto f = [a](double x) { return std::pow(x, a); };
    const double base = weighted_norm(f, v, 2.0, Interval(0, 3), tol);
    const double scaled =
        weighted_norm([&](double x) { return l * f(x); }, v, 2.0, Interval(0, 3), tol);
    CHECK(std::abs(scaled - std::abs(l) * base) <= 10 * tol * std::abs(l) * base);
  }
}

TEST_CASE("weighted_norm is monotone in the interval") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> expo(-1.5, 1.5), pt(0.05, 20);
  for (int i = 0; i < 20; ++i) {
    const double a = expo(rng);
    double lo = pt(rng), hi = pt(rng);
    if (lo > hi) std::swap(lo, hi);
    const PowerLogWeight v(1.0, 0.0, -2.0);
    auto f = [a](double x) { return std::pow(x, a); };
    for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent::infinity()}) {
      const double inner = weighted_norm(f, v, p, Interval(lo, hi));
      const double outer = weighted_norm(f, v, p, Interval(lo * 0.5, hi * 2));
      CHECK(inner <= outer * (1 + 1e-8));
    }
  }
}

TEST_CASE("Hoelder inequality on random power pairs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> expo(-0.3, 1.5), wexp(-0.3, 0.3);
  for (double pv : {1.5, 2.0, 3.0}) {
    const Exponent p(pv);
    const Exponent pp = conjugate(p);
    for (int i = 0; i < 10; ++i) {
      const double a = expo(rng), b = expo(rng);
      const PowerLogWeight v(1.0, wexp(rng), 0.0);
      const Interval iv(0, 2);
      auto f = [a](double x) { return std::pow(x, a); };
      auto g = [b](double x) { return std::pow(x, b); };
      const double lhs = integrate([&](double x) { return f(x) * g(x); }, iv, 1e-10).value;
      const double rhs = weighted_norm(f, v, p, iv) * weighted_norm(g, v.inverse(), pp, iv);
      CHECK(lhs <= rhs * (1 + 1e-6));
    }
  }
}

TEST_CASE("powerlog_norm_class agrees with quadrature") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> ea(-2.0, 1.0), eb(-2.0, 2.0), es(1.0, 3.0);
  int checked = 0;
  while (checked < 50) {
    const PowerLogWeight w(1.0, ea(rng), eb(rng));
    const Exponent s(es(rng));
    for (Endpoint e : {Endpoint::Origin, Endpoint::Infinity}) {
      const auto cls = powerlog_norm_class(w, s, e);
      if (std::abs(cls.localExponent + 1.0) < 0.05) continue;
      const Interval iv = e == Endpoint::Origin ? Interval(0, 1) : Interval(1, kInf);
      bool divergent = false;
      try {
        const auto r = integrate([&](double x) { return std::pow(w(x), s.value()); }, iv, 1e-8);
        divergent = !std::isfinite(r.value);
      } catch (const DivergentIntegral&) {
        divergent = true;
      }
      CHECK_MESSAGE(divergent == (cls.verdict == Finiteness::Infinite),
                    "a=" << w.a() << " b=" << w.b() << " s=" << s.value());
      ++checked;
    }
  }
}
