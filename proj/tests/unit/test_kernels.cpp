#include <doctest.h>

#include <cmath>

#include "splitkernel/errors.hpp"
#include "splitkernel/kernels.hpp"

using namespace splitkernel;

TEST_CASE("catalog: stieltjes envelopes") {
  const auto e = catalog("stieltjes", {{"lambda", 1.0}});
  REQUIRE(e.spec.w1);
  REQUIRE(e.spec.s2);
  CHECK(*e.spec.w1 == PowerLogWeight::power(-1));
  CHECK(*e.spec.s2 == PowerLogWeight::power(-1));
  CHECK(e.spec.lower1);
  CHECK(e.spec.lower2);
}

TEST_CASE("catalog: laplace n=2") {
  const auto e = catalog("laplace", {{"n", 2.0}});
  CHECK(e.spec.C2 == doctest::Approx(2.0));
  CHECK(*e.spec.s2 == PowerLogWeight::power(-2));
}

TEST_CASE("catalog: struve alpha=1") {
  const auto e = catalog("struve", {{"alpha", 1.0}});
  CHECK(*e.spec.s1 == PowerLogWeight::power(2.5));
  CHECK(*e.spec.s2 == PowerLogWeight::power(0.5));
  CHECK(e.spec.lower1);
  CHECK(e.spec.lower2);
  CHECK_FALSE(e.kernel.oscillatory);
  const auto low = catalog("struve", {{"alpha", 0.25}});
  CHECK_FALSE(low.spec.lower2);
  CHECK(low.kernel.oscillatory);
}

TEST_CASE("catalog: errors and names") {
  CHECK_THROWS_AS(catalog("gauss"), UnknownKernel);
  CHECK_THROWS_AS(catalog("laplace", {{"n", 1.5}}), ParamOutOfRange);
  CHECK_THROWS_AS(catalog("stieltjes", {{"lambda", -1.0}}), ParamOutOfRange);
  CHECK_THROWS_AS(catalog("struve", {{"alpha", -0.7}}), ParamOutOfRange);
  CHECK(catalog_names().size() == 7);
  const auto arg = parse_kernel_arg("laplace:n=3");
  CHECK(arg.name == "laplace");
  CHECK(arg.params.at("n") == 3.0);
  CHECK(parse_kernel_arg(format_kernel_arg(arg)).params == arg.params);
  CHECK_THROWS_AS(parse_kernel_arg("laplace:n"), ConfigError);
}

TEST_CASE("spec validation rejects lower flags on zero envelopes") {
  SplittingKernelSpec s;
  s.s1 = PowerLogWeight::one();
  s.lower1 = true;
  CHECK_THROWS_AS(s.validate(), ParamOutOfRange);
}

TEST_CASE("upper_envelope examples") {
  const auto lap = catalog("laplace", {{"n", 1.0}});
  CHECK(upper_envelope(lap.spec, 0.5, 1.0) == doctest::Approx(1.0));
  CHECK(upper_envelope(lap.spec, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(upper_envelope(catalog("hardy").spec, 3.0, 2.0) == 0.0);
  // boundary point belongs to region one
  CHECK(upper_envelope(lap.spec, 1.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("phi preimages and round trip") {
  for (const PhiMap phi : {PhiMap(1, 1), PhiMap(1, -1), PhiMap(2.5, 2), PhiMap(0.3, -0.5)}) {
    for (double t = 1e-2; t <= 1e2; t *= 1.7) {
      CHECK(phi(phi.inverse(t)) == doctest::Approx(t).epsilon(1e-12));
    }
  }
  const PhiMap sq(1, 2);
  CHECK(sq.compose(PowerLogWeight::power(1.5)) == PowerLogWeight::power(3));
  const auto ex = compose_exponents(PhiMap(1, -1), PowerLogWeight(1, 1, 2));
  CHECK(ex.atOrigin == doctest::Approx(-3));
  CHECK(ex.atInfinity == doctest::Approx(-1));
}

TEST_CASE("validate_estimate: every catalog kernel") {
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    EstimateReport r;
    CHECK_NOTHROW(r = validate_estimate(e.spec, e.kernel, 10000));
    CHECK(r.samples == 10000);
    CHECK(r.maxUpperRatio <= 1.0 + 1e-9);
  }
  for (double a : {-0.25, 0.25, 0.5, 0.75, 2.0}) {
    const auto e = catalog("struve", {{"alpha", a}});
    CHECK_NOTHROW(validate_estimate(e.spec, e.kernel, 10000));
  }
  const auto lap2 = catalog("laplace", {{"n", 2.0}});
  CHECK_NOTHROW(validate_estimate(lap2.spec, lap2.kernel, 10000));
}

TEST_CASE("validate_estimate: lower ratios") {
  const auto sine = catalog("sine");
  const auto rs = validate_estimate(sine.spec, sine.kernel, 10000);
  REQUIRE(rs.minLowerRatio1);
  CHECK(*rs.minLowerRatio1 >= std::sin(1.0) * (1 - 1e-9));

  const auto st = catalog("stieltjes");
  const auto rt = validate_estimate(st.spec, st.kernel, 10000);
  REQUIRE(rt.minLowerRatio1);
  REQUIRE(rt.minLowerRatio2);
  CHECK(*rt.minLowerRatio1 >= 0.5);
  CHECK(*rt.minLowerRatio2 >= 0.5);
}

TEST_CASE("struve kernel is two-sided against its envelope") {
  for (double a : {0.75, 1.0, 2.0}) {
    const auto e = catalog("struve", {{"alpha", a}});
    const auto r = validate_estimate(e.spec, e.kernel, 10000);
    MESSAGE("alpha=" << a << " two-sided constant " << r.minTwoSidedRatio);
    CHECK(r.minTwoSidedRatio > 0.01);
    CHECK(r.maxUpperRatio <= 1.0 + 1e-9);
  }
}

TEST_CASE("validate_estimate reports the offending point") {
  auto e = catalog("laplace");
  e.spec.C2 = 1e-3;
  try {
    validate_estimate(e.spec, e.kernel, 1000);
    FAIL("expected EstimateViolated");
  } catch (const EstimateViolated& err) {
    CHECK(err.x() > 1.0 / err.y());
  }
}
