#include <gtest/gtest.h>

#include "sclca/params.hpp"

using namespace sclca;

TEST(AlgoParams, DerivedCounts) {
  const auto p = AlgoParams::for_bounds(64, 64);
  EXPECT_EQ(p.log_s, 6u);
  EXPECT_EQ(p.log_t, 6u);
  EXPECT_EQ(p.phase_len, 3u);
  EXPECT_EQ(p.base_case_R, 3u);
  EXPECT_EQ(p.phase_count(), 2u);
  EXPECT_DOUBLE_EQ(p.lambda5, 4.0);
  EXPECT_DOUBLE_EQ(p.lambda10, 8.0);

  const auto q = AlgoParams::for_bounds(10, 5);
  EXPECT_EQ(q.log_s, 4u);
  EXPECT_EQ(q.log_t, 3u);
  EXPECT_EQ(q.phase_len, 2u);
  EXPECT_EQ(q.base_case_R, 2u);
  EXPECT_EQ(q.phase_count(), 2u);
}

TEST(AlgoParams, DegenerateBoundsClampToOne) {
  const auto p = AlgoParams::for_bounds(1, 1);
  EXPECT_EQ(p.log_s, 1u);
  EXPECT_EQ(p.log_t, 1u);
  EXPECT_EQ(p.phase_len, 1u);
  EXPECT_EQ(p.base_case_R, 1u);
}

TEST(AlgoParams, Validation) {
  EXPECT_THROW(AlgoParams::for_bounds(8, 8, 0.5), std::invalid_argument);
  EXPECT_THROW(AlgoParams::for_bounds(8, 8, 4.0, 3.0), std::invalid_argument);
  EXPECT_NO_THROW(AlgoParams::for_bounds(8, 8, 4.0, 4.0));
  auto p = AlgoParams::for_bounds(8, 8);
  p.phase_len = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = AlgoParams::for_bounds(8, 8);
  p.base_case_R = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(AlgoParams, Polylog) {
  const auto sys = SetSystem::from_sets(4, {{0, 1, 2, 3}});
  const auto p = AlgoParams::polylog(sys);
  EXPECT_DOUBLE_EQ(p.lambda5, 4.0);
  const auto big = SetSystem(64, {[] {
                               std::vector<ElementId> v(64);
                               for (ElementId e = 0; e < 64; ++e) v[e] = e;
                               return v;
                             }()},
                             64, 64);
  const auto q = AlgoParams::polylog(big);
  EXPECT_DOUBLE_EQ(q.lambda5, 36.0);
  EXPECT_DOUBLE_EQ(q.lambda10, 72.0);
}

TEST(AlgoParams, SampleProbabilityClamps) {
  const auto p = AlgoParams::for_bounds(64, 8, 2.0);
  EXPECT_DOUBLE_EQ(p.sample_probability(1), 4.0 / 64);
  EXPECT_DOUBLE_EQ(p.sample_probability(4), 32.0 / 64);
  EXPECT_DOUBLE_EQ(p.sample_probability(6), 1.0);
  EXPECT_DOUBLE_EQ(p.size_threshold(3), 8.0);
  EXPECT_DOUBLE_EQ(p.set_probability(1), 0.25);
  EXPECT_DOUBLE_EQ(p.set_probability(3), 1.0);
}

TEST(AlgoParams, MinLargeCountIsTheBoundary) {
  for (std::size_t s : {4u, 7u, 16u, 33u, 64u}) {
    for (double l5 : {1.0, 3.0, 4.0, 36.0}) {
      const auto p = AlgoParams::for_bounds(s, 8, l5);
      for (std::uint32_t i = 1; i <= p.log_s; ++i) {
        const auto c = p.min_large_count(i);
        EXPECT_TRUE(p.is_large(c, i));
        if (c > 0) EXPECT_FALSE(p.is_large(c - 1, i));
        EXPECT_EQ(p.is_large(c, i), p.estimate(c, i) >= p.size_threshold(i));
      }
    }
  }
}
