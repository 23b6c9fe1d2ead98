#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sclca {

using SetId = std::uint32_t;
using ElementId = std::uint32_t;

/// Bipartite incidence structure between sets and elements.
///
/// Canonical form: every set is non-empty, strictly ascending, and every
/// element is contained in at least one set. `s()` and `t()` are the declared
/// bounds on set size and element degree; the body never exceeds them.
class SetSystem {
 public:
  /// Throws std::invalid_argument when the body violates canonical form or
  /// the declared bounds.
  SetSystem(std::size_t num_elements, std::vector<std::vector<ElementId>> sets,
            std::size_t s_bound, std::size_t t_bound);

  /// Bounds taken as the actual maximum set size and element degree.
  static SetSystem from_sets(std::size_t num_elements,
                             std::vector<std::vector<ElementId>> sets);

  std::size_t num_elements() const { return membership_.size(); }
  std::size_t num_sets() const { return sets_.size(); }
  std::size_t s() const { return s_; }
  std::size_t t() const { return t_; }

  // Unmetered access; the LCA oracles go through query_set/query_element.
  std::span<const ElementId> elements_of(SetId set) const { return sets_[set]; }
  std::span<const SetId> sets_containing(ElementId e) const { return membership_[e]; }

  bool contains(SetId set, ElementId e) const;
  std::size_t max_set_size() const;
  std::size_t max_degree() const;

  friend bool operator==(const SetSystem&, const SetSystem&) = default;

 private:
  std::vector<std::vector<ElementId>> sets_;
  std::vector<std::vector<SetId>> membership_;
  std::size_t s_ = 0;
  std::size_t t_ = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::uint64_t cap);
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

/// Counts neighbor queries. One query returns a whole neighborhood.
class QueryMeter {
 public:
  QueryMeter() = default;
  explicit QueryMeter(std::optional<std::uint64_t> cap) : cap_(cap) {}

  /// Records one query attributed to `level` (used for per-level profiles).
  /// Throws BudgetExceeded if the cap would be exceeded.
  void charge(std::size_t level = 0);

  std::uint64_t count() const { return count_; }
  std::optional<std::uint64_t> cap() const { return cap_; }
  const std::vector<std::uint64_t>& by_level() const { return by_level_; }

 private:
  std::uint64_t count_ = 0;
  std::optional<std::uint64_t> cap_;
  std::vector<std::uint64_t> by_level_;
};

/// Neighbor query: all elements of `set`. Throws std::out_of_range for a bad id.
std::span<const ElementId> query_set(const SetSystem& sys, SetId set, QueryMeter& meter,
                                     std::size_t level = 0);

/// Neighbor query: all sets containing `e`. Throws std::out_of_range for a bad id.
std::span<const SetId> query_element(const SetSystem& sys, ElementId e, QueryMeter& meter,
                                     std::size_t level = 0);

enum class InstanceKind { UniformRandom, PlantedCover, WorstCaseChain };

std::string to_string(InstanceKind kind);
InstanceKind parse_instance_kind(const std::string& text);

struct InstanceSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 2;
  std::size_t t = 2;
  InstanceKind kind = InstanceKind::UniformRandom;
  std::uint64_t seed = 0;
};

/// A set system plus the metadata that travels with it in instance files.
struct Instance {
  SetSystem system;
  std::optional<std::size_t> planted_opt;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Deterministic in `spec.seed`. Throws ConstructionError when (n, m, s, t)
/// cannot be realized by the requested kind.
Instance generate(const InstanceSpec& spec);

Instance read_instance(const std::filesystem::path& path);
Instance parse_instance(const std::string& text);
void write_instance(const Instance& instance, const std::filesystem::path& path);
std::string format_instance(const Instance& instance);

}  // namespace sclca
