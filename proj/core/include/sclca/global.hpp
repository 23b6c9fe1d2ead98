#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sclca/cover.hpp"
#include "sclca/params.hpp"
#include "sclca/set_system.hpp"
#include "sclca/tape.hpp"

namespace sclca {

/// Thrown when a structural invariant of the recursive algorithm is violated.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Round numbering.
//   base, generic: round (i-1)*log_t + (k-1) is iteration k of stage i.
//   recsplit: each stage owns log_t + 1 rounds; the first is the bad-set step,
//     then iteration k is round offset k. Cleanup is the last round.
//   sqrt: each phase owns one bad-set round followed by its iterations.
std::uint32_t generic_round(const AlgoParams& p, std::uint32_t stage, std::uint32_t iteration);
std::uint32_t recsplit_round(const AlgoParams& p, std::uint32_t stage, std::uint32_t iteration);

/// Exact free counts; sets are added with probability 2^k / t.
RunResult run_base(const SetSystem& sys, const RandomTape& tape, const AlgoParams& params);

/// Estimated free counts from per-stage samples B_i(S).
RunResult run_generic(const SetSystem& sys, const RandomTape& tape, const AlgoParams& params);

/// Phases of T iterations with bad-set force-adds, pretend marking and cleanup.
RunResult run_sqrt(const SetSystem& sys, const RandomTape& tape, const AlgoParams& params);

/// Recursive halving of the iteration range. Throws InvariantViolation if an
/// element exceeds its per-family degree bound at a recursion entry.
RunResult run_recsplit(const SetSystem& sys, const RandomTape& tape, const AlgoParams& params);

/// |{e in B_i(S) : free(e)}| / p. Throws std::domain_error unless 0 < p <= 1.
double estimate_degree(const SetSystem& sys, const RandomTape& tape, std::uint32_t stage,
                       SetId set, const std::function<bool(ElementId)>& free, double p);

/// sum_k x_k * 2^k / r * prod_{j<k} exp(-x_j * 2^j / r), k counted from 1.
/// Throws std::domain_error on empty xs or r <= 0.
double f_seq(std::span<const double> xs, double r);

/// Per element: how many sets containing it were added in the round that
/// first covered it, restricted to stage 1 of run_base (0 if not covered then).
std::vector<std::uint32_t> stage_one_multiplicity(const SetSystem& sys, const RandomTape& tape,
                                                  const AlgoParams& params);

/// Bad-element test against a finished run_generic trace (generic round
/// numbering). Throws std::logic_error if the trace is unfinished.
bool detect_bad_element(const SetSystem& sys, const RandomTape& tape, const AlgoParams& params,
                        const CoverState& trace, ElementId e);

/// Bad-set test against a finished run_generic trace.
bool detect_bad_set(const SetSystem& sys, const RandomTape& tape, const AlgoParams& params,
                    const CoverState& trace, SetId set);

/// Both detectors over every element / set of the trace at once.
struct BadEvents {
  std::vector<char> element;
  std::vector<char> set;
  std::size_t bad_elements() const;
  std::size_t bad_sets() const;
};
BadEvents detect_bad_events(const SetSystem& sys, const RandomTape& tape,
                            const AlgoParams& params, const CoverState& trace);

}  // namespace sclca
