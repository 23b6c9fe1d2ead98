#include "sclca/tape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sclca {

namespace {

constexpr std::uint64_t kSetSampleTag = 0x53455453414d504cULL;
constexpr std::uint64_t kElemSampleTag = 0x454c454d53414d50ULL;

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed ^ tag);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

struct Hasher {
  std::uint64_t seed;
  std::uint64_t operator()(const SetSample& k) const {
    return mix(seed, kSetSampleTag, k.stage, k.iteration, k.set);
  }
  std::uint64_t operator()(const ElemSample& k) const {
    return mix(seed, kElemSampleTag, k.stage, k.set, k.element);
  }
};

}  // namespace

double RandomTape::uniform(const CoinKind& kind) const {
  const std::uint64_t bits = std::visit(Hasher{seed_}, kind);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

bool RandomTape::coin(const CoinKind& kind, double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("coin probability must lie in [0, 1]");
  }
  if (p == 1.0) return true;
  if (p == 0.0) return false;
  return uniform(kind) < p;
}

std::uint32_t iteration_count(std::size_t t) {
  std::uint32_t k = 0;
  while ((std::size_t{1} << k) < t) ++k;
  return k == 0 ? 1 : k;
}

double set_sample_probability(std::uint32_t iteration, std::size_t t) {
  return std::min(1.0, std::ldexp(1.0, static_cast<int>(iteration)) / static_cast<double>(t));
}

bool in_S_ik(const RandomTape& tape, std::uint32_t stage, std::uint32_t iteration, SetId set,
             std::size_t t) {
  if (iteration < 1 || iteration > iteration_count(t)) {
    throw std::domain_error("iteration " + std::to_string(iteration) + " out of range");
  }
  return tape.coin(SetSample{stage, iteration, set}, set_sample_probability(iteration, t));
}

bool in_B_i(const RandomTape& tape, const SetSystem& sys, std::uint32_t stage, SetId set,
            ElementId e, double p) {
  if (!sys.contains(set, e)) throw std::domain_error("element is not in the set");
  return tape.coin(ElemSample{stage, set, e}, p);
}

}  // namespace sclca
