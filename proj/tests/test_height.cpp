#include <cmath>

#include "doctest.h"
#include "radargait/height.hpp"
#include "radargait/rng.hpp"

using namespace radargait;

TEST_CASE("inverting the stride law and applying the model closes the loop") {
  // l derived for h = 1.8 at v = 1.0 recovers h exactly.
  const double l = model_stride_length(1.0, 1.8);
  CHECK(l == doctest::Approx(1.31467).epsilon(1e-4));
  const HeightEstimate est = boulic_height(1.0, l);
  CHECK(est.h == doctest::Approx(1.8).epsilon(1e-9));
  CHECK(est.source == HeightSource::kModel);
  CHECK(!est.flagged);
}

TEST_CASE("unit-height construction") {
  // l chosen so l^2 = 1.346^2 * 0.53 * v gives h = 1 exactly.
  const double v = 1.0;
  const double l = kRelativeStrideCoeff * std::sqrt(kThighHeightRatio * v);
  const HeightEstimate est = boulic_height(v, l);
  CHECK(est.h == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling the stride at fixed speed quadruples the height") {
  const HeightEstimate a = boulic_height(1.2, 0.7);
  const HeightEstimate b = boulic_height(1.2, 1.4);
  CHECK(b.h == doctest::Approx(4.0 * a.h).epsilon(1e-12));
}

TEST_CASE("algebraic identity h * (1.346^2 * 0.53 * v) = l^2") {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const double v = rng.uniform(0.3, 3.0);
    const double l = rng.uniform(0.2, 2.5);
    const double h = boulic_height(v, l).h;
    const double lhs = h * (kRelativeStrideCoeff * kRelativeStrideCoeff *
                            kThighHeightRatio * v);
    CHECK(std::abs(lhs - l * l) < 1e-12);
  }
}

TEST_CASE("out-of-regime speeds are rejected") {
  CHECK_THROWS_AS(boulic_height(0.1, 1.0), OutOfRegime);
  CHECK_THROWS_AS(boulic_height(0.2, 1.0), OutOfRegime);
  CHECK_THROWS_AS(boulic_height(1.0, 0.0), OutOfRegime);
  CHECK_THROWS_AS(height_features(0.1, 1.0), OutOfRegime);
}

TEST_CASE("implausible heights are flagged, not clamped") {
  const HeightEstimate tall = boulic_height(0.25, 2.0);  // ~31 m
  CHECK(tall.flagged);
  CHECK(tall.h > kMaxPlausibleHeight);
  const HeightEstimate tiny = boulic_height(2.8, 0.5);
  CHECK(tiny.flagged);
  CHECK(tiny.h < kMinPlausibleHeight);
}

TEST_CASE("feature vector at v = l = 1 collapses to ones") {
  const HeightFeatures f = height_features(1.0, 1.0);
  for (double x : f.values) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("feature vector at v = 2, l = 1") {
  const HeightFeatures f = height_features(2.0, 1.0);
  const double expected[8] = {2.0, 1.0, 2.0, 4.0, 2.0, 0.5, 0.25, 0.5};
  for (int i = 0; i < 8; ++i) CHECK(f.values[i] == doctest::Approx(expected[i]));
}

TEST_CASE("feature order is frozen") {
  const auto& names = HeightFeatures::names();
  REQUIRE(names.size() == 8);
  CHECK(names[0] == "v");
  CHECK(names[1] == "l");
  CHECK(names[7] == "l2_over_v");
}

TEST_CASE("feature 8 ties to the model: l^2/v = h * 1.346^2 * 0.53") {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.uniform(0.5, 2.5);
    const double l = rng.uniform(0.4, 2.0);
    const HeightFeatures f = height_features(v, l);
    const double h = boulic_height(v, l).h;
    CHECK(f.values[7] == doctest::Approx(h * kRelativeStrideCoeff *
                                         kRelativeStrideCoeff *
                                         kThighHeightRatio)
                             .epsilon(1e-12));
  }
}

TEST_CASE("round-trip over random (h, v) pairs closes to 1e-9 relative") {
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double h = rng.uniform(1.5, 2.0);
    const double v = rng.uniform(0.8, 1.8);
    const double l = model_stride_length(v, h);
    const double back = boulic_height(v, l).h;
    CHECK(std::abs(back - h) / h < 1e-9);
  }
}
