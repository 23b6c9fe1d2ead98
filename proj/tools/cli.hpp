#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sclca/cover.hpp"
#include "sclca/params.hpp"
#include "sclca/set_system.hpp"
#include "sclca/tape.hpp"

namespace sclca::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kMismatch = 2;  // oracle/global disagreement or invalid cover
inline constexpr int kBudget = 3;    // --meter-cap exceeded

/// Default set count when --m is omitted.
std::size_t auto_sets(std::size_t n, std::size_t s);

struct ParamFlags {
  std::optional<double> lambda5;
  std::optional<double> lambda10;
  bool polylog = false;
  std::string bad_set_rule = "literal";

  AlgoParams resolve(const SetSystem& sys) const;
};

inline const std::vector<std::string> kAlgos = {"base", "generic", "sqrt", "recsplit", "greedy"};

/// Runs one named algorithm. The report's seed field is the tape seed.
RunResult run_algorithm(const std::string& algo, const SetSystem& sys, const RandomTape& tape,
                        const AlgoParams& params);

struct BenchConfig {
  std::vector<std::string> algos;
  std::vector<std::size_t> n;
  std::vector<std::size_t> m;  // empty: auto_sets per (n, s)
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
  std::vector<std::string> kinds{"uniform"};
  std::size_t seeds = 1;
  std::uint64_t first_seed = 0;
  ParamFlags params;
  std::optional<std::uint64_t> meter_cap;
  std::size_t oracle_calls = 16;  // set targets profiled per sqrt/recsplit cell
  std::string out;                // empty: standard output

  /// Throws std::invalid_argument on an empty grid axis, zero seeds or an
  /// unknown algorithm or kind.
  void validate() const;
};

inline constexpr const char* kBenchSchema = "# sclca-bench v1";
std::string bench_header();

/// Writes the schema line, the header and one row per (algo, cell, seed),
/// flushing after every row. Rows come out sorted by algo, kind, n, m, s, t,
/// seed. Returns the number of data rows.
std::size_t run_bench(const BenchConfig& config, std::ostream& out);

/// Full command line entry point; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sclca::cli
