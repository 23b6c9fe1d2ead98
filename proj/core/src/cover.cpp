#include "sclca/cover.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sclca {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::BadSetAdd: return "bad-set-add";
    case EventKind::Pretend: return "pretend";
    case EventKind::CleanupAdd: return "cleanup-add";
  }
  throw std::logic_error("unknown event kind");
}

CoverState::CoverState(std::size_t num_elements, std::size_t num_sets)
    : chosen_round_(num_sets, kNever),
      covered_round_(num_elements, kNever),
      pretend_round_(num_elements, kNever),
      assignment_(num_elements, -1) {}

std::optional<SetId> CoverState::cover_assignment(ElementId e) const {
  if (assignment_[e] < 0) return std::nullopt;
  return static_cast<SetId>(assignment_[e]);
}

std::vector<SetId> CoverState::chosen_sets() const {
  std::vector<SetId> out;
  out.reserve(chosen_count_);
  for (SetId s = 0; s < chosen_round_.size(); ++s) {
    if (chosen_round_[s] != kNever) out.push_back(s);
  }
  return out;
}

std::size_t CoverState::uncovered_count() const {
  return static_cast<std::size_t>(
      std::count(covered_round_.begin(), covered_round_.end(), kNever));
}

std::vector<ElementId> CoverState::add_sets(const SetSystem& sys, std::vector<SetId> sets,
                                            std::uint32_t round) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<ElementId> newly;
  const auto r = static_cast<std::int32_t>(round);
  for (SetId s : sets) {
    if (chosen_round_.at(s) != kNever) continue;
    chosen_round_[s] = r;
    ++chosen_count_;
    for (ElementId e : sys.elements_of(s)) {
      if (covered_round_[e] != kNever) continue;
      covered_round_[e] = r;
      assignment_[e] = s;
      newly.push_back(e);
    }
  }
  std::sort(newly.begin(), newly.end());
  return newly;
}

bool CoverState::mark_pretend(ElementId e, std::uint32_t round) {
  if (!is_live(e)) return false;
  pretend_round_[e] = static_cast<std::int32_t>(round);
  return true;
}

std::size_t CoverState::count_events(EventKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(), [kind](const Event& ev) { return ev.kind == kind; }));
}

bool is_valid_cover(const SetSystem& sys, std::span<const SetId> chosen) {
  std::vector<char> covered(sys.num_elements(), 0);
  for (SetId s : chosen) {
    if (s >= sys.num_sets()) return false;
    for (ElementId e : sys.elements_of(s)) covered[e] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool is_valid_cover(const SetSystem& sys, const CoverState& state) {
  const auto chosen = state.chosen_sets();
  return is_valid_cover(sys, chosen);
}

std::string RunReport::csv_header() {
  return "algo,n,m,s,t,seed,cover_size,opt_lb,bad_set_events,pretend_events,cleanup_adds,rounds";
}

std::string RunReport::csv_row() const {
  std::ostringstream out;
  out << algo << ',' << n << ',' << m << ',' << s << ',' << t << ',' << seed << ','
      << cover_size << ',' << opt_lb << ',' << bad_set_events << ',' << pretend_events << ','
      << cleanup_adds << ',' << rounds;
  return out.str();
}

}  // namespace sclca
