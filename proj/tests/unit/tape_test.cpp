#include <gtest/gtest.h>

#include <cmath>

#include "sclca/tape.hpp"

using namespace sclca;

TEST(Coin, ExtremeProbabilities) {
  const RandomTape tape(42);
  for (std::uint32_t s = 0; s < 1000; ++s) {
    EXPECT_TRUE(tape.coin(SetSample{1, 3, s}, 1.0));
    EXPECT_FALSE(tape.coin(ElemSample{1, s, 7}, 0.0));
  }
}

TEST(Coin, RejectsInvalidProbability) {
  const RandomTape tape(1);
  EXPECT_THROW(tape.coin(SetSample{1, 1, 0}, -0.1), std::domain_error);
  EXPECT_THROW(tape.coin(SetSample{1, 1, 0}, 1.5), std::domain_error);
  EXPECT_THROW(tape.coin(SetSample{1, 1, 0}, std::nan("")), std::domain_error);
}

TEST(Coin, RepeatedQueriesAgree) {
  const RandomTape tape(7);
  const bool first = tape.coin(ElemSample{2, 11, 5}, 0.5);
  for (int rep = 0; rep < 1000; ++rep) EXPECT_EQ(tape.coin(ElemSample{2, 11, 5}, 0.5), first);
}

TEST(Coin, MarginalRates) {
  const RandomTape tape(2024);
  for (double p : {0.1, 0.5, 0.9}) {
    int hits = 0;
    const int N = 100000;
    for (int j = 0; j < N; ++j) {
      hits += tape.coin(ElemSample{static_cast<std::uint32_t>(j % 7), static_cast<SetId>(j), 3}, p);
    }
    EXPECT_NEAR(static_cast<double>(hits) / N, p, 0.01) << "p=" << p;
  }
}

TEST(Coin, KindsAreDistinctDomains) {
  const RandomTape tape(3);
  int same = 0;
  const int N = 20000;
  for (int j = 0; j < N; ++j) {
    const auto a = static_cast<std::uint32_t>(j);
    same += tape.uniform(SetSample{1, 2, a}) == tape.uniform(ElemSample{1, 2, a});
  }
  EXPECT_EQ(same, 0);
}

TEST(Coin, PairwiseCorrelationIsSmall) {
  const RandomTape tape(99);
  const int N = 10000;
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (int j = 0; j < N; ++j) {
    const auto id = static_cast<std::uint32_t>(j);
    const double x = tape.coin(SetSample{1, 1, id}, 0.5);
    const double y = tape.coin(SetSample{1, 1, id + 1}, 0.5);
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double cov = sxy / N - (sx / N) * (sy / N);
  const double corr = cov / std::sqrt((sxx / N - sx * sx / N / N) * (syy / N - sy * sy / N / N));
  EXPECT_LE(std::abs(corr), 0.02);
}

TEST(Coin, SeedChangesAnswers) {
  const RandomTape a(1), b(2);
  int diff = 0;
  for (std::uint32_t s = 0; s < 1000; ++s) {
    diff += a.coin(SetSample{1, 1, s}, 0.5) != b.coin(SetSample{1, 1, s}, 0.5);
  }
  EXPECT_GT(diff, 400);
}

TEST(SetFamily, LastIterationIncludesEverySet) {
  const RandomTape tape(5);
  for (std::size_t t : {2u, 3u, 8u, 33u, 64u}) {
    const auto last = iteration_count(t);
    for (SetId s = 0; s < 500; ++s) EXPECT_TRUE(in_S_ik(tape, 1, last, s, t));
  }
}

TEST(SetFamily, FirstIterationRate) {
  const RandomTape tape(6);
  int hits = 0;
  const int N = 100000;
  for (int s = 0; s < N; ++s) hits += in_S_ik(tape, 2, 1, static_cast<SetId>(s), 8);
  EXPECT_NEAR(static_cast<double>(hits) / N, 0.25, 0.01);
}

TEST(SetFamily, IterationRange) {
  const RandomTape tape(6);
  EXPECT_THROW(in_S_ik(tape, 1, 0, 0, 8), std::domain_error);
  EXPECT_THROW(in_S_ik(tape, 1, 4, 0, 8), std::domain_error);
  EXPECT_NO_THROW(in_S_ik(tape, 1, 3, 0, 8));
  EXPECT_EQ(iteration_count(1), 1u);
  EXPECT_EQ(iteration_count(2), 1u);
  EXPECT_EQ(iteration_count(5), 3u);
}

TEST(StageSample, ExtremesAndMembership) {
  const SetSystem sys(4, {{0, 1, 2, 3}, {1, 3}}, 4, 2);
  const RandomTape tape(8);
  for (ElementId e = 0; e < 4; ++e) {
    EXPECT_TRUE(in_B_i(tape, sys, 1, 0, e, 1.0));
    EXPECT_FALSE(in_B_i(tape, sys, 1, 0, e, 0.0));
  }
  EXPECT_THROW(in_B_i(tape, sys, 1, 1, 0, 0.5), std::domain_error);
}

TEST(StageSample, ReusedAcrossIterations) {
  const SetSystem sys(64, {[] {
                        std::vector<ElementId> v(64);
                        for (ElementId e = 0; e < 64; ++e) v[e] = e;
                        return v;
                      }()},
                      64, 1);
  const RandomTape tape(10);
  std::vector<bool> first, second;
  for (ElementId e = 0; e < 64; ++e) first.push_back(in_B_i(tape, sys, 3, 0, e, 0.4));
  for (ElementId e = 0; e < 64; ++e) second.push_back(in_B_i(tape, sys, 3, 0, e, 0.4));
  EXPECT_EQ(first, second);
  std::vector<bool> other;
  for (ElementId e = 0; e < 64; ++e) other.push_back(in_B_i(tape, sys, 4, 0, e, 0.4));
  EXPECT_NE(first, other);
}
