#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "splitkernel/errors.hpp"
#include "splitkernel/probe.hpp"

using namespace splitkernel;

namespace {
PowerLogWeight pw(double a) { return PowerLogWeight::power(a); }
const PowerLogWeight one = PowerLogWeight::one();

ProbeFunction indicator(double lo, double hi) { return power_window(1.0, 0.0, lo, hi); }

ProbeFunction sum(const ProbeFunction& f, const ProbeFunction& g, double a, double b) {
  ProbeFunction h;
  h.lo = std::min(f.lo, g.lo);
  h.hi = std::max(f.hi, g.hi);
  h.eval = [=](double x) { return a * f.eval(x) + b * g.eval(x); };
  for (double c : {f.lo, f.hi, g.lo, g.hi}) {
    if (c > h.lo && c < h.hi) h.breakpoints.push_back(c);
  }
  return h;
}
}  // namespace

TEST_CASE("apply_transform examples") {
  const auto lap = catalog("laplace");
  CHECK(apply_transform(lap.kernel, power_window(1, 0, 0, kInf), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  const auto st = catalog("stieltjes");
  CHECK(apply_transform(st.kernel, indicator(0, 1), 1.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-8));
  const auto hardy = catalog("hardy");
  CHECK(apply_transform(hardy.kernel, indicator(0, 1), 2.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(apply_transform(hardy.kernel, indicator(0, 1), 0.5) == doctest::Approx(0.5).epsilon(1e-8));
  const auto bell = catalog("bellman");
  // int_2^3 dx / x
  CHECK(apply_transform(bell.kernel, indicator(0.5, 3), 2.0) ==
        doctest::Approx(std::log(1.5)).epsilon(1e-8));
  const auto rl = catalog("riemann-liouville", {{"alpha", 0.5}});
  // int_0^1 (2 - x)^{-1/2} dx = 2 (sqrt 2 - 1)
  CHECK(apply_transform(rl.kernel, indicator(0, 1), 2.0) ==
        doctest::Approx(2 * (std::sqrt(2.0) - 1)).epsilon(1e-8));
  const auto sine = catalog("sine");
  // int_0^pi sin(x) dx
  CHECK(apply_transform(sine.kernel, indicator(0, std::numbers::pi), 1.0) ==
        doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("apply_transform is linear in f") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> ex(-0.8, 1.5), co(-2, 2), pt(0.05, 5), yy(0.1, 10);
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    for (int i = 0; i < 4; ++i) {
      double a = pt(rng), b = pt(rng);
      if (a > b) std::swap(a, b);
      const auto f = power_window(1, ex(rng), a, b);
      const auto g = power_window(1, ex(rng), a * 0.5, b * 1.5);
      const double s = co(rng), t = co(rng), y = yy(rng);
      const double lhs = apply_transform(e.kernel, sum(f, g, s, t), y);
      const double rf = apply_transform(e.kernel, f, y), rg = apply_transform(e.kernel, g, y);
      const double scale = std::abs(s * rf) + std::abs(t * rg);
      CHECK_MESSAGE(std::abs(lhs - (s * rf + t * rg)) <= 1e-7 * scale + 1e-14, name);
    }
  }
}

TEST_CASE("extremal members carry their closed-form norms") {
  const auto lap = make_instance(catalog("laplace"), one, one, 2.0, 2.0);
  auto m = extremal_member(lap, Region::One, 4.0);
  CHECK(m.norm == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(weighted_norm(m.f.eval, one, 2.0, Interval(1e-12, 4.0)) ==
        doctest::Approx(m.norm).epsilon(1e-6));

  const auto st = make_instance(catalog("stieltjes"), pw(-0.2), pw(0.3), 1.5, 3.0);
  for (Region reg : {Region::One, Region::Two}) {
    m = extremal_member(st, reg, 2.0);
    const Interval iv = reg == Region::One ? Interval(0, 2.0) : Interval(2.0, kInf);
    CHECK(weighted_norm(m.f.eval, pw(0.3), 1.5, iv, 1e-10) ==
          doctest::Approx(m.norm).epsilon(1e-6));
  }

  // p = inf: 1/v with norm 1; p = 1: normalized bump with norm 1
  const auto hinf = make_instance(catalog("hardy"), pw(-1), pw(-0.5), Exponent::infinity(),
                                  Exponent::infinity());
  CHECK(extremal_member(hinf, Region::One, 3.0).norm == doctest::Approx(1.0));
  const auto h1 = make_instance(catalog("hardy"), pw(-1), pw(-0.5), 1.0, 2.0);
  m = extremal_member(h1, Region::One, 3.0);
  CHECK(m.norm == doctest::Approx(1.0));
  CHECK(weighted_norm(m.f.eval, pw(-0.5), 1.0, Interval(m.f.lo, m.f.hi)) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("extremal members need the side conditions") {
  // ||1/v||_{L_2(0,r)} = inf for v = x^0.6
  const auto h = make_instance(catalog("hardy"), pw(-1), pw(0.6), 2.0, 2.0);
  CHECK_THROWS_AS(extremal_member(h, Region::One, 1.0), SideConditionViolated);
  const auto bad = make_instance(catalog("laplace"), one, one, 2.0, 2.0);
  CHECK_THROWS_AS(extremal_ratio_scan(bad, Region::One, {}), ParamOutOfRange);
  const auto sine = make_instance(catalog("sine"), pw(-1), pw(-1), 2.0, 2.0);
  CHECK_THROWS_AS(extremal_ratio_scan(sine, Region::Two, {1.0}), ParamOutOfRange);
}

TEST_CASE("summarize_ratios classification") {
  const auto g = log_grid(1e-2, 1e2, 2);
  std::vector<double> flat(g.size(), 1.3), grow, inf(g.size(), 1.0);
  for (double r : g) grow.push_back(std::pow(r, 0.3));
  inf[2] = kInf;
  CHECK(summarize_ratios(g, flat).verdictHint == ProbeHint::BoundedConsistent);
  auto s = summarize_ratios(g, grow);
  CHECK(s.verdictHint == ProbeHint::GrowthDetected);
  CHECK(s.growthSlope == doctest::Approx(0.3).epsilon(1e-6));
  s = summarize_ratios(g, inf);
  CHECK(s.verdictHint == ProbeHint::GrowthDetected);
  CHECK(std::isinf(s.growthSlope));
}

TEST_CASE("laplace on L2 is bounded-consistent below its norm") {
  const auto inst = make_instance(catalog("laplace"), one, one, 2.0, 2.0);
  const auto r = extremal_ratio_scan(inst, Region::One, log_grid(1e-2, 1e2, 1));
  CHECK(r.verdictHint == ProbeHint::BoundedConsistent);
  CHECK(r.maxRatio <= std::sqrt(std::numbers::pi) * 1.02);
  // ||L chi_(0,r)|| / ||chi_(0,r)|| = sqrt(2 ln 2) for every r
  CHECK(r.maxRatio == doctest::Approx(std::sqrt(2 * std::log(2.0))).epsilon(1e-4));
}

TEST_CASE("hilbert near-extremal family approaches pi") {
  const auto st = catalog("stieltjes");
  double best = 0;
  for (double r : {10.0, 100.0, 1000.0}) {
    const auto f = power_window(1, -0.5, 1 / r, r);
    const double fn = std::sqrt(2 * std::log(r));
    NormOptions o;
    o.detectDivergence = false;
    best = std::max(best, transform_norm(st.kernel, f, one, 2.0, 1.0, o) / fn);
  }
  MESSAGE("best ratio " << best);
  CHECK(best >= 2.7);
  CHECK(best <= std::numbers::pi * 1.02);
}

TEST_CASE("hardy sharp probe matches its closed-form ratios") {
  const auto r = sharp_constant_probe("hardy", 2.0, 2.0);
  REQUIRE(r.epsilons.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double e = r.epsilons[i];
    CHECK(r.ratiosLow[i] == doctest::Approx(2 / std::sqrt(1 + 2 * e)).epsilon(1e-4));
  }
  CHECK(r.bestRatio >= 1.9);
  CHECK(r.bestRatio <= 2.0 + 1e-3);
  CHECK_THROWS_AS(sharp_constant_probe("hardy", 3.0, 3.0), ExponentOutOfScope);
  CHECK_THROWS_AS(sharp_constant_probe("sine", 2.0, 2.0), UnknownKernel);
}

TEST_CASE("pointwise envelope inequality on random windows") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> ex(-0.9, 2.0), lg(-2.0, 2.0), co(0.1, 3);
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    for (int i = 0; i < 5; ++i) {
      double a = std::pow(10.0, lg(rng)), b = std::pow(10.0, lg(rng));
      if (a > b) std::swap(a, b);
      const auto f = power_window(co(rng), ex(rng), a, b * 1.01);
      for (double y : {0.03, 0.7, 9.0}) {
        const auto c = pointwise_envelope_check(e, f, y);
        CHECK_MESSAGE(c.holds, name << " y=" << y << " T=" << c.transform << " bound=" << c.bound);
      }
    }
  }
}

TEST_CASE("bounded instances are bounded-consistent on both regions") {
  // stieltjes lambda = 1, beta = gamma = 0 is bounded
  const auto inst = make_instance(catalog("stieltjes"), one, one, 2.0, 2.0);
  REQUIRE(check_boundedness(inst).verdict == Boundedness::Bounded);
  for (Region reg : {Region::One, Region::Two}) {
    const auto r = extremal_ratio_scan(inst, reg, log_grid(1e-2, 1e2, 1));
    CHECK(r.verdictHint == ProbeHint::BoundedConsistent);
  }
}

TEST_CASE("unbounded via a lower flag shows growth on the deciding region") {
  const auto inst = make_instance(catalog("stieltjes"), pw(-0.2), one, 2.0, 2.0);
  const auto b = check_boundedness(inst);
  REQUIRE(b.verdict == Boundedness::Unbounded);
  const Region reg = b.decidingRegion == 1 ? Region::One : Region::Two;
  const auto r = extremal_ratio_scan(inst, reg, log_grid(1e-2, 1e2, 2));
  CHECK(r.verdictHint == ProbeHint::GrowthDetected);
  CHECK(r.growthSlope >= 0.05);
}
