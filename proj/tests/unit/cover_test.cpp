#include <gtest/gtest.h>

#include "sclca/cover.hpp"

using namespace sclca;

namespace {
const SetSystem kSys(5, {{0, 1, 2}, {1, 2, 3}, {3, 4}, {0, 4}}, 3, 2);
}

TEST(CoverState, SmallestIdTakesCreditWithinARound) {
  CoverState st(5, 4);
  const auto fresh = st.add_sets(kSys, {2, 1}, 0);
  EXPECT_EQ(fresh, (std::vector<ElementId>{1, 2, 3, 4}));
  EXPECT_EQ(st.cover_assignment(3), 1u);
  EXPECT_EQ(st.cover_assignment(4), 2u);
  EXPECT_EQ(st.cover_assignment(1), 1u);
  EXPECT_FALSE(st.cover_assignment(0).has_value());
  st.add_sets(kSys, {0, 3}, 1);
  EXPECT_EQ(st.cover_assignment(0), 0u);
  EXPECT_EQ(st.cover_assignment(3), 1u);
  EXPECT_EQ(st.covered_round(0), 1);
  EXPECT_EQ(st.chosen_round(1), 0);
  EXPECT_EQ(st.cover_size(), 4u);
}

TEST(CoverState, AddsAreIdempotent) {
  CoverState st(5, 4);
  st.add_sets(kSys, {0, 0}, 0);
  st.add_sets(kSys, {0}, 3);
  EXPECT_EQ(st.cover_size(), 1u);
  EXPECT_EQ(st.chosen_round(0), 0);
}

TEST(CoverState, PretendOnlyOnLiveElements) {
  CoverState st(5, 4);
  st.add_sets(kSys, {2}, 0);
  EXPECT_FALSE(st.mark_pretend(3, 1));
  EXPECT_TRUE(st.mark_pretend(0, 1));
  EXPECT_FALSE(st.mark_pretend(0, 2));
  EXPECT_TRUE(st.is_pretend(0));
  EXPECT_FALSE(st.is_live(0));
  EXPECT_FALSE(st.is_covered(0));
  st.add_sets(kSys, {0}, 3);
  EXPECT_TRUE(st.is_covered(0));
  EXPECT_EQ(st.cover_assignment(0), 0u);
}

TEST(CoverState, Validity) {
  EXPECT_TRUE(is_valid_cover(kSys, std::vector<SetId>{0, 2}));
  EXPECT_FALSE(is_valid_cover(kSys, std::vector<SetId>{0, 1}));
  EXPECT_FALSE(is_valid_cover(kSys, std::vector<SetId>{9}));
  CoverState st(5, 4);
  EXPECT_FALSE(is_valid_cover(kSys, st));
  st.add_sets(kSys, {1, 3}, 0);
  EXPECT_TRUE(is_valid_cover(kSys, st));
  EXPECT_EQ(st.uncovered_count(), 0u);
}

TEST(CoverState, EventsAndFinish) {
  CoverState st(5, 4);
  st.log({0, EventKind::BadSetAdd, 1});
  st.log({2, EventKind::Pretend, 3});
  st.log({2, EventKind::Pretend, 4});
  EXPECT_EQ(st.count_events(EventKind::Pretend), 2u);
  EXPECT_EQ(st.count_events(EventKind::CleanupAdd), 0u);
  EXPECT_FALSE(st.finished());
  st.finish(7);
  EXPECT_TRUE(st.finished());
  EXPECT_EQ(st.rounds(), 7u);
}

TEST(RunReport, CsvRow) {
  RunReport r;
  r.algo = "sqrt";
  r.n = 10;
  r.m = 5;
  r.s = 4;
  r.t = 3;
  r.seed = 77;
  r.cover_size = 4;
  r.opt_lb = 3;
  r.bad_set_events = 1;
  r.pretend_events = 2;
  r.cleanup_adds = 1;
  r.rounds = 9;
  EXPECT_EQ(RunReport::csv_header(),
            "algo,n,m,s,t,seed,cover_size,opt_lb,bad_set_events,pretend_events,cleanup_adds,rounds");
  EXPECT_EQ(r.csv_row(), "sqrt,10,5,4,3,77,4,3,1,2,1,9");
}
