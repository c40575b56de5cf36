#include <doctest.h>

#include <cmath>

#include "splitkernel/analyzer.hpp"
#include "splitkernel/errors.hpp"
#include "splitkernel/hardy.hpp"

using namespace splitkernel;

namespace {
PowerInstance make(Exponent p, Exponent q, double beta, double gamma, double param = 0.0) {
  PowerInstance i;
  i.p = p;
  i.q = q;
  i.beta = beta;
  i.gamma = gamma;
  i.param = param;
  return i;
}

BoundednessResult numeric(const std::string& kernel, std::map<std::string, double> params,
                          const PowerInstance& pi) {
  return check_boundedness(make_instance(catalog(kernel, params), pi.u(), pi.v(), pi.p, pi.q));
}
}  // namespace

TEST_CASE("linkage") {
  CHECK(linked(make(2, 2, 0.3, 0.3)));
  CHECK_FALSE(linked(make(2, 2, 0.3, 0.31)));
  CHECK(linked_gamma(1.0, 2.0, 0.0) == doctest::Approx(-0.5));
  CHECK(linked(make(1.5, 3, 0.1, linked_gamma(1.5, 3, 0.1))));
}

TEST_CASE("laplace closed form examples") {
  CHECK(laplace_power_verdict(make(2, 2, 0, 0)) == PowerVerdict::Bounded);
  CHECK(laplace_power_verdict(make(2, 2, 0.6, 0.6)) == PowerVerdict::Unbounded);
  CHECK(laplace_power_verdict(make(1, Exponent::infinity(), -0.5, -0.5)) == PowerVerdict::Bounded);
  CHECK(laplace_power_verdict(make(1, Exponent::infinity(), 0.5, 0.5)) == PowerVerdict::Unbounded);
  CHECK_THROWS_AS(laplace_power_verdict(make(3, 2, 0, 0)), ExponentOrderViolation);
}

TEST_CASE("struve closed form examples") {
  CHECK(struve_power_verdict(make(2, 2, 2, 2, 1.0)) == PowerVerdict::Bounded);
  CHECK(struve_power_verdict(make(2, 2, 0.5, 0.5, 1.0)) == PowerVerdict::Unbounded);
  CHECK(struve_power_verdict(make(2, 2, 1, 1, 0.25)) == PowerVerdict::SufficientOnly);
  CHECK(struve_power_verdict(make(2, 2, 0.25, 0.25, 0.25)) == PowerVerdict::Unknown);
  CHECK_THROWS_AS(struve_power_verdict(make(2, 2, 1, 1, -0.6)), ParamOutOfRange);
}

TEST_CASE("sine closed form examples") {
  auto s = sine_power_verdict(make(2, 2, 1, 1));
  CHECK(s.sharpVerdict == PowerVerdict::Bounded);
  CHECK(s.envelopeSufficient);
  s = sine_power_verdict(make(2, 2, 0.25, 0.25));
  CHECK(s.sharpVerdict == PowerVerdict::Bounded);
  CHECK_FALSE(s.envelopeSufficient);
  s = sine_power_verdict(make(2, 2, 1.75, 1.75));
  CHECK(s.sharpVerdict == PowerVerdict::Unbounded);
}

TEST_CASE("sine sufficiency range lies inside the sharp range") {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (double q : {1.5, 2.0, 3.0, 5.0}) {
      if (p > q) continue;
      for (double beta = -1; beta <= 2.5; beta += 0.05) {
        const auto v = sine_power_verdict(make(p, q, beta, linked_gamma(p, q, beta)));
        if (v.envelopeSufficient) CHECK(v.sharpVerdict == PowerVerdict::Bounded);
      }
    }
  }
}

TEST_CASE("stieltjes closed form examples") {
  CHECK(stieltjes_power_verdict(make(2, 2, 0, 0, 1)) == PowerVerdict::Bounded);
  CHECK(stieltjes_power_verdict(make(2, 2, 0.4, -0.4, 1)) == PowerVerdict::Bounded);
  CHECK(stieltjes_power_verdict(make(2, 2, 0.6, -0.6, 1)) == PowerVerdict::Unbounded);
  CHECK(stieltjes_power_verdict(make(2, 2, 0.1, 0.1, 1)) == PowerVerdict::Unbounded);
  CHECK_THROWS_AS(stieltjes_power_verdict(make(1, 2, 0, 0, 1)), ExponentOutOfScope);
  CHECK_THROWS_AS(stieltjes_power_verdict(make(2, Exponent::infinity(), 0, 0, 1)),
                  ExponentOutOfScope);
}

TEST_CASE("stieltjes closed form agrees with the two-condition verdict") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double p : {1.5, 2.0}) {
      for (double q : {2.0, 3.0}) {
        const double iq = 1 / q, ipp = 1 - 1 / p;
        for (double beta = -1.5; beta <= 1.5; beta += 0.25) {
          const double gamma = iq + ipp - lambda - beta;
          // distance to the four strict constraints
          const double d = std::min({std::abs(beta - iq), std::abs(gamma - ipp),
                                     std::abs(beta + lambda - iq), std::abs(gamma + lambda - ipp)});
          if (d < 0.1) continue;
          const auto pi = make(p, q, beta, gamma, lambda);
          const auto closed = stieltjes_power_verdict(pi);
          const auto r = numeric("stieltjes", {{"lambda", lambda}}, pi);
          CHECK_MESSAGE((r.verdict == Boundedness::Bounded) == (closed == PowerVerdict::Bounded),
                        "lambda=" << lambda << " p=" << p << " q=" << q << " beta=" << beta);
          CHECK(r.verdict != Boundedness::Inconclusive);
        }
      }
    }
  }
}

TEST_CASE("laplace condition implication examples") {
  auto r = laplace_condition_implication(make(2, 2, 0, 0));
  CHECK(r.holds);
  REQUIRE(r.n);
  CHECK(*r.n == 1);
  r = laplace_condition_implication(make(1, 2, -0.1, -0.6));
  CHECK(r.holds);
  CHECK(r.antecedent);
  r = laplace_condition_implication(make(2, 2, 0.6, 0.6));
  CHECK(r.holds);
  CHECK_FALSE(r.antecedent);
}

TEST_CASE("laplace condition implication holds on the exponent grid") {
  const Exponent ps[] = {1.0, 1.5, 2.0, 3.0, Exponent::infinity()};
  for (const auto& p : ps) {
    for (const auto& q : ps) {
      if (p.value() > q.value()) continue;
      for (double beta = -1; beta <= 1.0001; beta += 0.125) {
        for (double detune : {0.0, 0.2, -0.2}) {
          const auto r =
              laplace_condition_implication(make(p, q, beta, linked_gamma(p, q, beta) + detune));
          CHECK_MESSAGE(r.holds, "p=" << p.value() << " q=" << q.value() << " beta=" << beta);
        }
      }
    }
  }
}

TEST_CASE("laplace first condition matches its closed-form test numerically") {
  for (double beta : {-0.75, -0.25, 0.25, 0.75}) {
    const auto pi = make(2, 2, beta, beta);
    const auto c =
        condition_one(make_instance(catalog("laplace"), pi.u(), pi.v(), pi.p, pi.q));
    CHECK((c.verdict == Verdict::Finite) == laplace_first_condition(pi));
  }
}
