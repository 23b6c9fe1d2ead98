#include "sclca/baselines.hpp"

#include <algorithm>
#include <queue>
#include <utility>
#include <stdexcept>

namespace sclca {

CoverState greedy_cover(const SetSystem& sys) {
  const std::size_t m = sys.num_sets();
  CoverState st(sys.num_elements(), m);
  std::vector<std::size_t> gain(m);
  // Lazy max-heap on (gain, -id); stale keys only ever overstate the gain.
  using Entry = std::pair<std::size_t, SetId>;
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (SetId s = 0; s < m; ++s) {
    gain[s] = sys.elements_of(s).size();
    heap.emplace(gain[s], s);
  }
  std::size_t uncovered = sys.num_elements();
  std::uint32_t round = 0;
  while (uncovered > 0) {
    const auto [key, pick] = heap.top();
    heap.pop();
    if (key != gain[pick]) {
      heap.emplace(gain[pick], pick);
      continue;
    }
    const auto newly = st.add_sets(sys, {pick}, round++);
    uncovered -= newly.size();
    for (ElementId e : newly) {
      for (SetId s : sys.sets_containing(e)) --gain[s];
    }
  }
  st.finish(round);
  return st;
}

std::string to_string(OptMethod method) {
  switch (method) {
    case OptMethod::Exhaustive: return "exhaustive";
    case OptMethod::Planted: return "planted";
    case OptMethod::NsBound: return "ns-bound";
  }
  throw std::logic_error("unknown method");
}

std::size_t ns_lower_bound(const SetSystem& sys) {
  const std::size_t w = std::max<std::size_t>(1, sys.max_set_size());
  return (sys.num_elements() + w - 1) / w;
}

namespace {

class Search {
 public:
  Search(const SetSystem& sys, std::optional<std::uint64_t> budget)
      : sys_(sys), budget_(budget), hits_(sys.num_elements(), 0),
        widest_(std::max<std::size_t>(1, sys.max_set_size())) {}

  void run(std::vector<SetId> incumbent) {
    best_ = std::move(incumbent);
    uncovered_ = sys_.num_elements();
    recurse();
  }

  bool complete() const { return complete_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<SetId>& best() const { return best_; }

 private:
  void recurse() {
    if (budget_ && nodes_ >= *budget_) {
      complete_ = false;
      return;
    }
    ++nodes_;
    if (uncovered_ == 0) {
      if (path_.size() < best_.size()) best_ = path_;
      return;
    }
    if (path_.size() + (uncovered_ + widest_ - 1) / widest_ >= best_.size()) return;
    // Branch on the uncovered element with the fewest options.
    ElementId pivot = 0;
    std::size_t fewest = SIZE_MAX;
    for (ElementId e = 0; e < sys_.num_elements(); ++e) {
      if (hits_[e] == 0 && sys_.sets_containing(e).size() < fewest) {
        fewest = sys_.sets_containing(e).size();
        pivot = e;
      }
    }
    for (SetId s : sys_.sets_containing(pivot)) {
      take(s);
      recurse();
      drop(s);
      if (!complete_) return;
    }
  }

  void take(SetId s) {
    path_.push_back(s);
    for (ElementId e : sys_.elements_of(s)) {
      if (hits_[e]++ == 0) --uncovered_;
    }
  }

  void drop(SetId s) {
    path_.pop_back();
    for (ElementId e : sys_.elements_of(s)) {
      if (--hits_[e] == 0) ++uncovered_;
    }
  }

  const SetSystem& sys_;
  std::optional<std::uint64_t> budget_;
  std::vector<std::uint32_t> hits_;
  std::size_t widest_;
  std::size_t uncovered_ = 0;
  std::vector<SetId> path_;
  std::vector<SetId> best_;
  std::uint64_t nodes_ = 0;
  bool complete_ = true;
};

}  // namespace

OptBound exact_min_cover(const SetSystem& sys, std::optional<std::uint64_t> node_budget) {
  if (!node_budget && sys.num_sets() > 24) {
    throw std::invalid_argument("exact search over more than 24 sets needs a node budget");
  }
  Search search(sys, node_budget);
  search.run(greedy_cover(sys).chosen_sets());
  OptBound out;
  out.lower_bound = ns_lower_bound(sys);
  out.best_cover = search.best();
  std::sort(out.best_cover.begin(), out.best_cover.end());
  out.upper_bound = out.best_cover.size();
  out.nodes = search.nodes();
  if (search.complete()) {
    out.exact_opt = out.upper_bound;
    out.method = OptMethod::Exhaustive;
  } else {
    out.method = OptMethod::NsBound;
  }
  return out;
}

namespace {
// Larger instances skip the search; its per-node cost grows with n.
constexpr std::size_t kSearchLimit = 64;
}  // namespace

OptBound opt_bound(const Instance& inst, std::uint64_t node_budget) {
  const auto& sys = inst.system;
  OptBound out;
  if (sys.num_sets() <= kSearchLimit) {
    out = exact_min_cover(sys, node_budget);
    if (out.exact_opt) return out;
  } else {
    out.lower_bound = ns_lower_bound(sys);
    out.best_cover = greedy_cover(sys).chosen_sets();
    out.upper_bound = out.best_cover.size();
  }
  if (inst.planted_opt && *inst.planted_opt == out.lower_bound) {
    out.exact_opt = inst.planted_opt;
    out.method = OptMethod::Planted;
  }
  return out;
}

}  // namespace sclca
