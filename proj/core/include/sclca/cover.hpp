#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sclca/set_system.hpp"

namespace sclca {

enum class EventKind { BadSetAdd, Pretend, CleanupAdd };

std::string to_string(EventKind kind);

struct Event {
  std::uint32_t round = 0;
  EventKind kind = EventKind::BadSetAdd;
  std::uint32_t id = 0;  // set id for adds, element id for pretend

  friend bool operator==(const Event&, const Event&) = default;
};

/// Evolving solution of one run. Every mutation happens in a numbered round;
/// sets added in one round are applied together, so the smallest id wins the
/// credit for an element first covered in that round.
class CoverState {
 public:
  static constexpr std::int32_t kNever = -1;

  CoverState() = default;
  CoverState(std::size_t num_elements, std::size_t num_sets);

  std::size_t num_elements() const { return covered_round_.size(); }
  std::size_t num_sets() const { return chosen_round_.size(); }

  bool is_chosen(SetId set) const { return chosen_round_[set] != kNever; }
  bool is_covered(ElementId e) const { return covered_round_[e] != kNever; }
  bool is_pretend(ElementId e) const { return pretend_round_[e] != kNever; }
  /// Neither covered nor pretending.
  bool is_live(ElementId e) const { return !is_covered(e) && !is_pretend(e); }

  std::int32_t chosen_round(SetId set) const { return chosen_round_[set]; }
  std::int32_t covered_round(ElementId e) const { return covered_round_[e]; }
  std::int32_t pretend_round(ElementId e) const { return pretend_round_[e]; }
  std::optional<SetId> cover_assignment(ElementId e) const;

  /// Chosen set ids in ascending order.
  std::vector<SetId> chosen_sets() const;
  std::size_t cover_size() const { return chosen_count_; }
  std::size_t uncovered_count() const;

  /// Adds `sets` in one round. Already chosen sets are ignored. Returns the
  /// elements that became covered, ascending.
  std::vector<ElementId> add_sets(const SetSystem& sys, std::vector<SetId> sets,
                                  std::uint32_t round);

  /// Marks `e` pretend-covered. No-op returning false if e is not live.
  bool mark_pretend(ElementId e, std::uint32_t round);

  void log(Event event) { events_.push_back(event); }
  const std::vector<Event>& events() const { return events_; }
  std::size_t count_events(EventKind kind) const;

  void finish(std::uint32_t rounds) {
    rounds_ = rounds;
    finished_ = true;
  }
  bool finished() const { return finished_; }
  std::uint32_t rounds() const { return rounds_; }

  friend bool operator==(const CoverState&, const CoverState&) = default;

 private:
  std::vector<std::int32_t> chosen_round_;
  std::vector<std::int32_t> covered_round_;
  std::vector<std::int32_t> pretend_round_;
  std::vector<std::int64_t> assignment_;  // -1 when uncovered
  std::vector<Event> events_;
  std::size_t chosen_count_ = 0;
  std::uint32_t rounds_ = 0;
  bool finished_ = false;
};

/// Every element is contained in some chosen set.
bool is_valid_cover(const SetSystem& sys, std::span<const SetId> chosen);
bool is_valid_cover(const SetSystem& sys, const CoverState& state);

struct RunReport {
  std::string algo;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::size_t cover_size = 0;  // includes cleanup_adds
  std::size_t opt_lb = 0;      // ceil(n / s) unless a better bound is known
  std::size_t bad_set_events = 0;
  std::size_t pretend_events = 0;
  std::size_t cleanup_adds = 0;
  std::size_t rounds = 0;
  std::vector<std::size_t> per_stage_sizes;  // sets added per stage (cleanup excluded)

  static std::string csv_header();
  std::string csv_row() const;
};

struct RunResult {
  CoverState state;
  RunReport report;
};

}  // namespace sclca
