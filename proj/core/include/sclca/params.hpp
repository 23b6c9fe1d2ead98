#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sclca/set_system.hpp"

namespace sclca {

/// Which bad-set test runs at the start of a phase (or stage).
enum class BadSetRule {
  /// |B(S) ∩ free| >= lambda10 on the current stage's sample only.
  Literal,
  /// Any later stage i2 >= i with |B_i2(S) ∩ free| >= lambda10 * 2^(i2 - i).
  Scaled,
};

/// Loop bounds and threshold multipliers shared by every algorithm variant.
///
/// Stage i runs for i = 1..log_s with size threshold s / 2^i; iteration k runs
/// for k = 1..log_t with set inclusion probability min(1, 2^k / t).
struct AlgoParams {
  std::size_t s = 2;
  std::size_t t = 2;
  std::uint32_t log_s = 1;
  std::uint32_t log_t = 1;
  std::uint32_t phase_len = 1;    // T = ceil(sqrt(log_t))
  std::uint32_t base_case_R = 1;  // recursion leaf size, max(1, ceil(log2 log_t))
  double lambda5 = 4.0;           // sampling multiplier
  double lambda10 = 8.0;          // bad-event threshold multiplier
  BadSetRule bad_set_rule = BadSetRule::Literal;

  static constexpr double kDefaultLambda5 = 4.0;

  /// lambda10 defaults to 2 * lambda5. Throws std::invalid_argument on
  /// lambda10 < lambda5 or lambda5 < 1.
  static AlgoParams for_bounds(std::size_t s, std::size_t t, double lambda5 = kDefaultLambda5,
                               std::optional<double> lambda10 = std::nullopt);
  static AlgoParams for_system(const SetSystem& sys, double lambda5 = kDefaultLambda5,
                               std::optional<double> lambda10 = std::nullopt);

  /// lambda5 = log_s * log_t (at least 4), lambda10 = 2 * lambda5.
  static AlgoParams polylog(const SetSystem& sys);

  void validate() const;

  /// p_i = min(1, lambda5 * 2^i / s).
  double sample_probability(std::uint32_t stage) const;
  double size_threshold(std::uint32_t stage) const;
  double set_probability(std::uint32_t iteration) const;

  /// Estimated free count |B ∩ free| / p_i.
  double estimate(std::size_t sampled_free, std::uint32_t stage) const;

  /// estimate >= s / 2^i. Every algorithm and oracle decides "large" here.
  bool is_large(std::size_t sampled_free, std::uint32_t stage) const;

  /// Smallest sampled-free count that is large in this stage.
  std::size_t min_large_count(std::uint32_t stage) const;

  std::uint32_t phase_count() const { return (log_t + phase_len - 1) / phase_len; }
};

std::uint32_t ceil_log2(std::size_t x);

}  // namespace sclca
