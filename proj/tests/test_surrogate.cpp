#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bogrid/surrogate.hpp"
#include "oracles.hpp"

using namespace bogrid;

namespace {

SurrogateState make_state(int w, int h, double sigma = 1.0, double sigma_f = 1.0,
                          SurrogateMode mode = SurrogateMode::Additive) {
  return SurrogateState(NavMask(w, h), build_kernel(sigma), sigma_f, mode);
}

}  // namespace

TEST(RecordSample, CountsVisits) {
  SurrogateState s = make_state(8, 8);
  s.record_sample({3, 3});
  s.record_sample({3, 3});
  EXPECT_EQ(s.occupancy()(3, 3), 1.0);
  EXPECT_EQ(s.heat()(3, 3), 2.0);
  EXPECT_EQ(s.sample_count(), 2u);
}

TEST(RecordSample, FreshStateIsEmpty) {
  const SurrogateState s = make_state(6, 4);
  for (double v : s.occupancy().values()) EXPECT_EQ(v, 0.0);
  for (double v : s.heat().values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(s.sample_count(), 0u);
}

TEST(RecordSample, Errors) {
  SurrogateState s = make_state(4, 4);
  for (Cell bad : {Cell{-1, 0}, Cell{4, 0}, Cell{0, 4}}) {
    try {
      s.record_sample(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidCell);
    }
  }
  try {
    s.record_sample({0, 0}, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
  }
  SurrogateState avg = make_state(4, 4, 1.0, 1.0, SurrogateMode::Averaged);
  try {
    avg.record_sample({0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModeMismatch);
  }
  EXPECT_EQ(s.sample_count(), 0u);
}

TEST(RecordSample, AveragedModeAccumulatesMetric) {
  SurrogateState s = make_state(5, 5, 1.0, 1.0, SurrogateMode::Averaged);
  s.record_sample({1, 1}, 30.0);
  s.record_sample({1, 1}, 50.0);
  EXPECT_EQ(s.heat()(1, 1), 80.0);
  EXPECT_EQ(s.metric_count()(1, 1), 2.0);
  EXPECT_EQ(s.occupancy()(1, 1), 1.0);
}

TEST(RecordSample, FootprintIndependentOfSampleCount) {
  SurrogateState s = make_state(32, 32);
  const std::size_t before = s.footprint_bytes();
  std::mt19937_64 gen(1);
  std::uniform_int_distribution<int> coord(0, 31);
  for (int i = 0; i < 100'000; ++i) s.record_sample({coord(gen), coord(gen)});
  EXPECT_EQ(s.footprint_bytes(), before);
}

TEST(PredictField, EmptyStateIsZero) {
  const ScalarGrid f = predict_field(make_state(9, 9));
  for (double v : f.values()) EXPECT_EQ(v, 0.0);
}

TEST(PredictField, SingleVisitIsNormalizedStamp) {
  SurrogateState s = make_state(11, 11);
  for (int i = 0; i < 5; ++i) s.record_sample({5, 5});
  const ScalarGrid f = predict_field(s);
  EXPECT_EQ(f(5, 5), 1.0);
  EXPECT_NEAR(f(6, 5), std::exp(-0.5), 1e-12);
  EXPECT_NEAR(f(6, 6), std::exp(-1.0), 1e-12);
}

TEST(PredictField, TwoSeparatedClustersMatchOracle) {
  SurrogateState s = make_state(14, 14, 1.0);
  for (int i = 0; i < 4; ++i) s.record_sample({2, 2});
  s.record_sample({10, 10});
  // Oracle: direct-sum smoothing of the heat map, then divide by its maximum.
  const ScalarGrid raw = oracle::direct_convolve(s.heat(), 1.0, 3);
  double peak = 0.0;
  for (double v : raw.values()) peak = std::max(peak, v);
  const ScalarGrid f = predict_field(s);
  EXPECT_NEAR(f(2, 2), raw(2, 2) / peak, 1e-12);
  EXPECT_NEAR(f(10, 10), raw(10, 10) / peak, 1e-12);
  EXPECT_NEAR(f(2, 2), 1.0, 1e-6);
  EXPECT_NEAR(f(10, 10), 0.25, 1e-6);
}

TEST(PredictField, AveragedModeIsWeightedMean) {
  SurrogateState s = make_state(20, 5, 1.0, 1.0, SurrogateMode::Averaged);
  s.record_sample({3, 2}, 10.0);
  s.record_sample({3, 2}, 30.0);  // mean 20 at (3,2)
  s.record_sample({15, 2}, 40.0);  // far away, mean 40
  const ScalarGrid f = predict_field(s);
  EXPECT_NEAR(f(3, 2), 0.5, 1e-12);
  EXPECT_NEAR(f(15, 2), 1.0, 1e-12);
  EXPECT_NEAR(f(4, 2), 0.5, 1e-12);  // only one source within the kernel window
  EXPECT_EQ(f(9, 2), 0.0);           // no data within the window: prior 0
}

TEST(PredictField, ArgmaxInvariantToHeatScaling) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> coord(0, 15);
  SurrogateState once = make_state(16, 16, 1.5);
  SurrogateState thrice = make_state(16, 16, 1.5);
  for (int i = 0; i < 60; ++i) {
    const Cell c{coord(gen), coord(gen)};
    once.record_sample(c);
    for (int k = 0; k < 3; ++k) thrice.record_sample(c);
  }
  const ScalarGrid a = predict_field(once), b = predict_field(thrice);
  EXPECT_LT(oracle::max_abs_diff(a, b), 1e-12);
  const auto arg = [](const ScalarGrid& g) {
    return std::max_element(g.values().begin(), g.values().end()) - g.values().begin();
  };
  EXPECT_EQ(arg(a), arg(b));
}

TEST(ConfidenceField, EmptyIsZero) {
  const ScalarGrid c = confidence_field(make_state(6, 6));
  for (double v : c.values()) EXPECT_EQ(v, 0.0);
}

TEST(ConfidenceField, IsolatedVisitGivesOne) {
  SurrogateState s = make_state(9, 9);
  s.record_sample({4, 4});
  const ScalarGrid c = confidence_field(s);
  EXPECT_EQ(c(4, 4), 1.0);
  EXPECT_NEAR(c(5, 4), std::exp(-0.5), 1e-12);
}

TEST(ConfidenceField, OverlappingStampsAreClamped) {
  SurrogateState s = make_state(9, 9);
  s.record_sample({4, 4});
  s.record_sample({5, 4});
  const ScalarGrid raw = convolve(s.occupancy(), s.kernel());
  EXPECT_NEAR(raw(4, 4), 1.0 + std::exp(-0.5), 1e-12);
  EXPECT_NEAR(raw(4, 4), 1.6065, 1e-4);
  const ScalarGrid c = confidence_field(s);
  EXPECT_EQ(c(4, 4), 1.0);
  EXPECT_EQ(c(5, 4), 1.0);
}

TEST(UncertaintyField, MapsConfidence) {
  ScalarGrid c(3, 1, std::vector<double>{0.0, 1.0, 0.25});
  const ScalarGrid u1 = uncertainty_from_confidence(c, 1.0);
  EXPECT_EQ(u1(0, 0), 1.0);
  EXPECT_EQ(u1(1, 0), 0.0);
  const ScalarGrid u2 = uncertainty_from_confidence(c, 2.0);
  EXPECT_EQ(u2(1, 0), 0.0);
  EXPECT_EQ(u2(2, 0), 1.5);
}

TEST(UncertaintyField, EmptyModelIsSigmaF) {
  const ScalarGrid u = uncertainty_field(make_state(5, 5, 1.0, 2.5));
  for (double v : u.values()) EXPECT_EQ(v, 2.5);
}

TEST(SurrogateState, RejectsBadSigmaF) {
  EXPECT_THROW(make_state(4, 4, 1.0, 0.0), Error);
  EXPECT_THROW(make_state(4, 4, 1.0, -1.0), Error);
}

// Property: bounds and field identities hold over random sample sequences, and
// confidence never decreases as samples arrive.
TEST(SurrogateProperties, BoundsIdentityAndMonotoneConfidence) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> dim(1, 24);
    const int w = dim(gen), h = dim(gen);
    const double sigma = std::uniform_real_distribution<double>(0.3, 4.0)(gen);
    const double sigma_f = std::uniform_real_distribution<double>(0.1, 3.0)(gen);
    SurrogateState s = make_state(w, h, sigma, sigma_f);
    std::uniform_int_distribution<int> cx(0, w - 1), cy(0, h - 1);
    ScalarGrid prev_c = confidence_field(s);
    for (int batch = 0; batch < 6; ++batch) {
      const int n = std::uniform_int_distribution<int>(1, 30)(gen);
      for (int i = 0; i < n; ++i) s.record_sample({cx(gen), cy(gen)});
      const ScalarGrid f = predict_field(s);
      const ScalarGrid c = confidence_field(s);
      const ScalarGrid u = uncertainty_field(s);
      for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_GE(c.values()[i], 0.0);
        EXPECT_LE(c.values()[i], 1.0);
        EXPECT_GE(u.values()[i], 0.0);
        EXPECT_LE(u.values()[i], sigma_f);
        EXPECT_GE(f.values()[i], 0.0);
        EXPECT_LE(f.values()[i], 1.0);
        EXPECT_NEAR(u.values()[i] + sigma_f * c.values()[i], sigma_f, 1e-12);
        EXPECT_GE(c.values()[i], prev_c.values()[i]);
      }
      prev_c = c;
    }
  }
}

TEST(ApplyMask, IdentityFillAndCheckerboard) {
  std::mt19937_64 gen(9);
  const ScalarGrid field = oracle::random_grid(gen, 6, 4);
  EXPECT_EQ(apply_mask(field, NavMask(6, 4, true), -7.0), field);

  const ScalarGrid all = apply_mask(field, NavMask(6, 4, false), INFINITY);
  for (double v : all.values()) EXPECT_EQ(v, INFINITY);

  NavMask checker(6, 4, false);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 6; ++x) checker.set({x, y}, (x + y) % 2 == 0);
  const ScalarGrid out = apply_mask(field, checker, 0.0);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 6; ++x) EXPECT_EQ(out(x, y), (x + y) % 2 == 0 ? field(x, y) : 0.0);
}

TEST(ApplyMask, ShapeMismatch) {
  try {
    apply_mask(ScalarGrid(3, 3), NavMask(3, 4), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}
