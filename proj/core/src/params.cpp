#include "sclca/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sclca/tape.hpp"

namespace sclca {

std::uint32_t ceil_log2(std::size_t x) {
  std::uint32_t k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

AlgoParams AlgoParams::for_bounds(std::size_t s, std::size_t t, double lambda5,
                                  std::optional<double> lambda10) {
  AlgoParams p;
  p.s = s;
  p.t = t;
  p.log_s = std::max<std::uint32_t>(1, ceil_log2(s));
  p.log_t = iteration_count(t);
  p.phase_len = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(p.log_t))));
  p.base_case_R = std::max<std::uint32_t>(1, ceil_log2(p.log_t));
  p.lambda5 = lambda5;
  p.lambda10 = lambda10.value_or(2.0 * lambda5);
  p.validate();
  return p;
}

AlgoParams AlgoParams::for_system(const SetSystem& sys, double lambda5,
                                  std::optional<double> lambda10) {
  return for_bounds(sys.s(), sys.t(), lambda5, lambda10);
}

AlgoParams AlgoParams::polylog(const SetSystem& sys) {
  const auto base = for_system(sys);
  const double lambda5 = std::max(4.0, static_cast<double>(base.log_s) * base.log_t);
  return for_system(sys, lambda5, 2.0 * lambda5);
}

void AlgoParams::validate() const {
  if (s == 0 || t == 0) throw std::invalid_argument("s and t must be positive");
  if (log_s < 1 || log_t < 1) throw std::invalid_argument("stage and iteration counts must be >= 1");
  if (phase_len < 1) throw std::invalid_argument("phase length must be >= 1");
  if (base_case_R < 1) throw std::invalid_argument("base case size must be >= 1");
  if (!(lambda5 >= 1.0)) throw std::invalid_argument("lambda5 must be >= 1");
  if (!(lambda10 >= lambda5)) throw std::invalid_argument("lambda10 must be >= lambda5");
}

double AlgoParams::sample_probability(std::uint32_t stage) const {
  return std::min(1.0, lambda5 * std::ldexp(1.0, static_cast<int>(stage)) /
                           static_cast<double>(s));
}

double AlgoParams::size_threshold(std::uint32_t stage) const {
  return std::ldexp(static_cast<double>(s), -static_cast<int>(stage));
}

double AlgoParams::set_probability(std::uint32_t iteration) const {
  return set_sample_probability(iteration, t);
}

double AlgoParams::estimate(std::size_t sampled_free, std::uint32_t stage) const {
  return static_cast<double>(sampled_free) / sample_probability(stage);
}

bool AlgoParams::is_large(std::size_t sampled_free, std::uint32_t stage) const {
  return estimate(sampled_free, stage) >= size_threshold(stage);
}

std::size_t AlgoParams::min_large_count(std::uint32_t stage) const {
  std::size_t c = 0;
  while (!is_large(c, stage)) ++c;
  return c;
}

}  // namespace sclca
