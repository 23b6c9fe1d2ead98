#pragma once

#include <cstdint>
#include <variant>

#include "sclca/set_system.hpp"

namespace sclca {

/// Membership of set `set` in the candidate family of (stage, iteration).
struct SetSample {
  std::uint32_t stage;
  std::uint32_t iteration;
  SetId set;
};

/// Membership of element `element` in the per-stage size-estimation sample of `set`.
struct ElemSample {
  std::uint32_t stage;
  SetId set;
  ElementId element;
};

using CoinKind = std::variant<SetSample, ElemSample>;

/// Shared random tape. Every coin is a pure function of the seed and the
/// coin's identity, so any code path that asks for the same coin gets the
/// same answer regardless of call order.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform deviate in [0, 1) keyed by the coin identity.
  double uniform(const CoinKind& kind) const;

  /// True with probability p. Throws std::domain_error if p is outside [0, 1].
  bool coin(const CoinKind& kind, double p) const;

 private:
  std::uint64_t seed_;
};

/// Inclusion probability of the iteration-k candidate family: min(1, 2^k / t).
double set_sample_probability(std::uint32_t iteration, std::size_t t);

/// Number of iterations per stage: ceil(log2 t), at least 1.
std::uint32_t iteration_count(std::size_t t);

/// Whether `set` is in the candidate family of (stage, iteration).
/// Throws std::domain_error unless 1 <= iteration <= iteration_count(t).
bool in_S_ik(const RandomTape& tape, std::uint32_t stage, std::uint32_t iteration, SetId set,
             std::size_t t);

/// Whether `e` is in the stage sample B_stage(set). The same sample is reused
/// across all iterations of a stage. Throws std::domain_error if e is not in set.
bool in_B_i(const RandomTape& tape, const SetSystem& sys, std::uint32_t stage, SetId set,
            ElementId e, double p);

}  // namespace sclca
