#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sclca/cover.hpp"
#include "sclca/set_system.hpp"

namespace sclca {

/// Repeatedly adds the set with the most uncovered elements, smallest id on
/// ties. Round r of the returned state is the r-th pick.
CoverState greedy_cover(const SetSystem& sys);

enum class OptMethod { Exhaustive, Planted, NsBound };

std::string to_string(OptMethod method);

struct OptBound {
  std::optional<std::size_t> exact_opt;
  std::size_t lower_bound = 0;  // ceil(n / max set size)
  std::size_t upper_bound = 0;  // size of the best cover found
  OptMethod method = OptMethod::NsBound;
  std::uint64_t nodes = 0;
  std::vector<SetId> best_cover;

  /// exact_opt when known, else lower_bound.
  std::size_t best_known() const { return exact_opt.value_or(lower_bound); }
};

std::size_t ns_lower_bound(const SetSystem& sys);

/// Branch and bound. Without a node budget the instance must have at most
/// 24 sets (std::invalid_argument otherwise). When the budget runs out the
/// result carries method NsBound and no exact_opt.
OptBound exact_min_cover(const SetSystem& sys,
                         std::optional<std::uint64_t> node_budget = std::nullopt);

/// Exact when the instance is small enough, otherwise the planted size when
/// it matches the lower bound, otherwise the lower bound alone.
OptBound opt_bound(const Instance& inst, std::uint64_t node_budget = 2'000'000);

}  // namespace sclca
