#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cnoma/params.hpp"

using namespace cnoma;

TEST_CASE("power allocation from the rate thresholds") {
  // p_n = (2^{2R1} - 1) / (2^{2(R1+R2)} - 1), p_f = 1 - p_n
  const PowerAllocation pa = derive_power_allocation(0.3, 0.3);
  CHECK(pa.p_n == doctest::Approx(0.39750105926563916).epsilon(1e-14));
  CHECK(pa.p_f == doctest::Approx(0.60249894073436084).epsilon(1e-14));
  CHECK(pa.p_n + pa.p_f == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pa.p_f > pa.p_n);  // far user takes the larger share

  // equal thresholds always leave the far user dominant; ordering flips only
  // if the near-user threshold is pushed well above the far one
  const PowerAllocation steep = derive_power_allocation(0.1, 2.0);
  CHECK(steep.p_f > steep.p_n);
  CHECK_THROWS_AS(derive_power_allocation(2.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(derive_power_allocation(0.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(derive_power_allocation(0.3, -1.0), std::domain_error);
}

TEST_CASE("distance to variance mapping") {
  CHECK(channel_variance(0.6, 2.0) ==
        doctest::Approx(2.7777777777777777).epsilon(1e-14));
  CHECK(channel_variance(1.0, 2.0) == doctest::Approx(1.0));
  CHECK(channel_variance(0.4, 2.0) == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(channel_variance(2.0, 3.0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_THROWS_AS(channel_variance(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(channel_variance(-1.0, 2.0), std::domain_error);
}

TEST_CASE("defaults validate and derive the documented quantities") {
  SystemParams p;  // figure-3 caption values
  ValidationOutcome out = validate(p);
  REQUIRE(out.ok());
  const ValidatedParams& vp = out.value();
  CHECK(vp.d_12 == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(vp.lambda_s1 == doctest::Approx(2.7777777777777777).epsilon(1e-14));
  CHECK(vp.lambda_s2 == doctest::Approx(1.0));
  CHECK(vp.lambda_12 == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(vp.rho == doctest::Approx(31.622776601683793).epsilon(1e-14));
  CHECK(vp.power.p_n == doctest::Approx(0.39750105926563916).epsilon(1e-14));
}

TEST_CASE("explicit variance overrides beat the distance mapping") {
  SystemParams p;
  p.lambda_s1 = 3.5;
  p.lambda_12 = 9.0;
  ValidationOutcome out = validate(p);
  REQUIRE(out.ok());
  CHECK(out.value().lambda_s1 == doctest::Approx(3.5));
  CHECK(out.value().lambda_s2 == doctest::Approx(1.0));  // still from d_s2
  CHECK(out.value().lambda_12 == doctest::Approx(9.0));

  p.lambda_s1 = -1.0;
  CHECK_FALSE(validate(p).ok());
}

TEST_CASE("validation collects every violation instead of stopping early") {
  SystemParams p;
  p.d_s1 = 1.5;   // must sit closer than d_s2 = 1
  p.theta = 1.0;  // open interval
  p.eta = 0.0;
  p.beta = 2.0;
  ValidationOutcome out = validate(p);
  REQUIRE_FALSE(out.ok());
  CHECK(out.violations.size() >= 4);
  CHECK_THROWS_AS(validate_or_throw(p), std::invalid_argument);
}

TEST_CASE("violation fields name the offending parameter") {
  SystemParams p;
  p.delta = 1.0;
  ValidationOutcome out = validate(p);
  REQUIRE_FALSE(out.ok());
  bool found = false;
  for (const Violation& v : out.violations) {
    if (v.field == "delta") found = true;
  }
  CHECK(found);
}

TEST_CASE("boundary values of the open and closed intervals") {
  SystemParams p;
  p.eta = 1.0;  // closed above
  CHECK(validate(p).ok());
  p.beta = 0.0;  // perfect SIC allowed
  CHECK(validate(p).ok());
  p.beta = 1.0;
  CHECK(validate(p).ok());
  p.theta = 0.0;
  CHECK_FALSE(validate(p).ok());
  p.theta = 0.999;
  CHECK(validate(p).ok());
}

TEST_CASE("d_12 override and t_total guard") {
  SystemParams p;
  p.d_12 = 0.7;
  ValidationOutcome out = validate(p);
  REQUIRE(out.ok());
  CHECK(out.value().lambda_12 == doctest::Approx(std::pow(0.7, -2.0)));
  p.d_12 = 0.0;
  CHECK_FALSE(validate(p).ok());
  p.d_12.reset();
  p.t_total = 0.0;
  CHECK_FALSE(validate(p).ok());
}

TEST_CASE("equal user distances are rejected") {
  SystemParams p;
  p.d_s1 = 1.0;  // ties d_s2, ordering must be strict
  CHECK_FALSE(validate(p).ok());
}
