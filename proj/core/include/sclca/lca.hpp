#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sclca/params.hpp"
#include "sclca/set_system.hpp"
#include "sclca/tape.hpp"

namespace sclca {

/// Everything an oracle call may touch. Only `sys` and `tape` are shared
/// between calls; each call builds its own memo. `meter` accumulates over all
/// calls made with this context and `last_queries` holds the latest call's
/// count.
struct OracleContext {
  const SetSystem* sys = nullptr;
  RandomTape tape{0};
  AlgoParams params;
  QueryMeter meter;
  std::uint64_t last_queries = 0;

  OracleContext(const SetSystem& system, RandomTape random, AlgoParams p,
                std::optional<std::uint64_t> cap = std::nullopt)
      : sys(&system), tape(random), params(p), meter(cap) {}
};

struct ElementAnswer {
  bool covered = false;
  std::optional<SetId> by;

  friend bool operator==(const ElementAnswer&, const ElementAnswer&) = default;
};

// Query levels in QueryMeter::by_level: stage i is level i; the final
// cleanup/membership layer is level log_s + 1.

/// Whether `set` is in the cover produced by run_sqrt on the same tape.
bool oracle_sqrt_set(OracleContext& ctx, SetId set);
ElementAnswer oracle_sqrt_element(OracleContext& ctx, ElementId e);

/// Whether `set` is in the cover produced by run_recsplit on the same tape.
bool oracle_recsplit_set(OracleContext& ctx, SetId set);
ElementAnswer oracle_recsplit_element(OracleContext& ctx, ElementId e);

enum class OracleAlgo { Sqrt, RecSplit };
enum class TargetKind { Set, Element };

std::string to_string(OracleAlgo algo);
OracleAlgo parse_oracle_algo(const std::string& text);

struct QueryProfile {
  std::string algo;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  std::size_t calls = 0;
  std::uint64_t q_max = 0;
  double q_mean = 0.0;
  std::uint64_t q_total = 0;
  std::vector<std::uint64_t> per_call;
  std::vector<std::uint64_t> by_level;

  static std::string csv_header();
  std::string csv_row() const;
};

/// Runs the oracle on every target with a fresh meter per call. Throws
/// std::invalid_argument on an empty sample.
QueryProfile profile(const OracleContext& tmpl, OracleAlgo algo, TargetKind kind,
                     std::span<const std::uint32_t> sample);

}  // namespace sclca
