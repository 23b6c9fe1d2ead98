#include "sclca/set_system.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace sclca {

namespace {

std::string describe_set(SetId set) { return "set " + std::to_string(set); }

}  // namespace

SetSystem::SetSystem(std::size_t num_elements, std::vector<std::vector<ElementId>> sets,
                     std::size_t s_bound, std::size_t t_bound)
    : sets_(std::move(sets)), membership_(num_elements), s_(s_bound), t_(t_bound) {
  if (num_elements == 0 || sets_.empty()) {
    throw std::invalid_argument("set system needs at least one element and one set");
  }
  if (s_ == 0 || t_ == 0) throw std::invalid_argument("bounds s and t must be positive");
  for (SetId id = 0; id < sets_.size(); ++id) {
    const auto& elems = sets_[id];
    if (elems.empty()) throw std::invalid_argument(describe_set(id) + " is empty");
    if (elems.size() > s_) throw std::invalid_argument(describe_set(id) + " exceeds bound s");
    for (std::size_t k = 0; k < elems.size(); ++k) {
      if (elems[k] >= num_elements) {
        throw std::invalid_argument(describe_set(id) + " has element id out of range");
      }
      if (k > 0 && elems[k - 1] >= elems[k]) {
        throw std::invalid_argument(describe_set(id) + " is not strictly ascending");
      }
      membership_[elems[k]].push_back(id);
    }
  }
  for (ElementId e = 0; e < membership_.size(); ++e) {
    if (membership_[e].empty()) {
      throw std::invalid_argument("element " + std::to_string(e) + " is in no set");
    }
    if (membership_[e].size() > t_) {
      throw std::invalid_argument("element " + std::to_string(e) + " exceeds bound t");
    }
  }
}

SetSystem SetSystem::from_sets(std::size_t num_elements,
                               std::vector<std::vector<ElementId>> sets) {
  std::size_t s = 1;
  std::vector<std::size_t> degree(num_elements, 0);
  for (const auto& elems : sets) {
    s = std::max(s, elems.size());
    for (ElementId e : elems) {
      if (e < num_elements) ++degree[e];
    }
  }
  std::size_t t = 1;
  for (std::size_t d : degree) t = std::max(t, d);
  return SetSystem(num_elements, std::move(sets), s, t);
}

bool SetSystem::contains(SetId set, ElementId e) const {
  const auto& elems = sets_.at(set);
  return std::binary_search(elems.begin(), elems.end(), e);
}

std::size_t SetSystem::max_set_size() const {
  std::size_t best = 0;
  for (const auto& elems : sets_) best = std::max(best, elems.size());
  return best;
}

std::size_t SetSystem::max_degree() const {
  std::size_t best = 0;
  for (const auto& sets : membership_) best = std::max(best, sets.size());
  return best;
}

BudgetExceeded::BudgetExceeded(std::uint64_t cap)
    : std::runtime_error("query budget of " + std::to_string(cap) + " exceeded"), cap_(cap) {}

void QueryMeter::charge(std::size_t level) {
  if (cap_ && count_ >= *cap_) throw BudgetExceeded(*cap_);
  ++count_;
  if (by_level_.size() <= level) by_level_.resize(level + 1, 0);
  ++by_level_[level];
}

std::span<const ElementId> query_set(const SetSystem& sys, SetId set, QueryMeter& meter,
                                     std::size_t level) {
  if (set >= sys.num_sets()) throw std::out_of_range("set id " + std::to_string(set));
  meter.charge(level);
  return sys.elements_of(set);
}

std::span<const SetId> query_element(const SetSystem& sys, ElementId e, QueryMeter& meter,
                                     std::size_t level) {
  if (e >= sys.num_elements()) throw std::out_of_range("element id " + std::to_string(e));
  meter.charge(level);
  return sys.sets_containing(e);
}

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::UniformRandom:
      return "uniform";
    case InstanceKind::PlantedCover:
      return "planted";
    case InstanceKind::WorstCaseChain:
      return "chain";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(const std::string& text) {
  if (text == "uniform" || text == "uniform-random") return InstanceKind::UniformRandom;
  if (text == "planted" || text == "planted-cover") return InstanceKind::PlantedCover;
  if (text == "chain" || text == "worst-case-chain") return InstanceKind::WorstCaseChain;
  throw std::invalid_argument("unknown instance kind '" + text + "'");
}

// ---------------------------------------------------------------------------
// Generators

namespace {

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

std::size_t draw_size(Rng& rng, std::size_t s, std::size_t n) {
  const std::size_t lo = (s + 1) / 2;
  const std::size_t size = std::uniform_int_distribution<std::size_t>(lo, s)(rng);
  return std::min(size, n);
}

bool has(const std::vector<ElementId>& elems, ElementId e) {
  return std::find(elems.begin(), elems.end(), e) != elems.end();
}

// Fills `set` with up to `target` distinct elements of spare degree capacity.
void fill_random(Rng& rng, std::vector<ElementId>& set, std::size_t target,
                 std::vector<std::size_t>& degree, std::size_t t) {
  const std::size_t n = degree.size();
  std::size_t attempts = 8 * target + 16;
  while (set.size() < target && attempts-- > 0) {
    const auto e = static_cast<ElementId>(uniform_index(rng, n));
    if (degree[e] >= t || has(set, e)) continue;
    set.push_back(e);
    ++degree[e];
  }
}

// Gives every element degree >= 1 by adding it to a set with slack, or by
// swapping out an element that is covered elsewhere.
void patch_uncovered(Rng& rng, std::vector<std::vector<ElementId>>& sets,
                     std::vector<std::size_t>& degree, std::size_t s) {
  std::vector<ElementId> uncovered;
  for (ElementId e = 0; e < degree.size(); ++e) {
    if (degree[e] == 0) uncovered.push_back(e);
  }
  std::shuffle(uncovered.begin(), uncovered.end(), rng);

  std::vector<SetId> slack;
  for (SetId id = 0; id < sets.size(); ++id) {
    if (sets[id].size() < s) slack.push_back(id);
  }

  for (ElementId e : uncovered) {
    if (!slack.empty()) {
      const std::size_t pick = uniform_index(rng, slack.size());
      auto& set = sets[slack[pick]];
      set.push_back(e);
      ++degree[e];
      if (set.size() >= s) {
        slack[pick] = slack.back();
        slack.pop_back();
      }
      continue;
    }
    bool placed = false;
    const std::size_t start = uniform_index(rng, sets.size());
    for (std::size_t step = 0; step < sets.size() && !placed; ++step) {
      auto& set = sets[(start + step) % sets.size()];
      for (auto& x : set) {
        if (degree[x] >= 2) {
          --degree[x];
          x = e;
          ++degree[e];
          placed = true;
          break;
        }
      }
    }
    if (!placed) throw ConstructionError("cannot cover every element within bound s");
  }
}

void patch_empty_sets(Rng& rng, std::vector<std::vector<ElementId>>& sets,
                      std::vector<std::size_t>& degree, std::size_t t) {
  const std::size_t n = degree.size();
  for (auto& set : sets) {
    if (!set.empty()) continue;
    const std::size_t start = uniform_index(rng, n);
    for (std::size_t step = 0; step < n; ++step) {
      const auto e = static_cast<ElementId>((start + step) % n);
      if (degree[e] < t) {
        set.push_back(e);
        ++degree[e];
        break;
      }
    }
    if (!set.empty()) continue;
    for (auto& donor : sets) {
      if (donor.size() >= 2) {
        set.push_back(donor.back());
        donor.pop_back();
        break;
      }
    }
    if (set.empty()) throw ConstructionError("cannot make every set non-empty within bound t");
  }
}

void canonicalize(std::vector<std::vector<ElementId>>& sets) {
  for (auto& set : sets) std::sort(set.begin(), set.end());
}

void check_common(const InstanceSpec& spec) {
  if (spec.n == 0 || spec.m == 0) throw ConstructionError("n and m must be positive");
  if (spec.s == 0 || spec.t == 0) throw ConstructionError("s and t must be positive");
  if (spec.m * spec.s < spec.n) throw ConstructionError("m * s < n: elements cannot be covered");
  if (spec.n * spec.t < spec.m) throw ConstructionError("n * t < m: sets cannot be non-empty");
}

Instance generate_uniform(const InstanceSpec& spec, Rng& rng) {
  std::vector<std::vector<ElementId>> sets(spec.m);
  std::vector<std::size_t> degree(spec.n, 0);
  for (auto& set : sets) fill_random(rng, set, draw_size(rng, spec.s, spec.n), degree, spec.t);
  patch_uncovered(rng, sets, degree, spec.s);
  patch_empty_sets(rng, sets, degree, spec.t);
  canonicalize(sets);
  return {SetSystem(spec.n, std::move(sets), spec.s, spec.t), std::nullopt};
}

Instance generate_planted(const InstanceSpec& spec, Rng& rng) {
  const std::size_t planted = (spec.n + spec.s - 1) / spec.s;
  if (spec.m < planted) throw ConstructionError("m is smaller than the planted cover");
  if (spec.m > planted && spec.t < 2) {
    throw ConstructionError("extra sets need t >= 2 in a planted instance");
  }
  std::vector<ElementId> order(spec.n);
  for (ElementId e = 0; e < spec.n; ++e) order[e] = e;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<ElementId>> sets(spec.m);
  std::vector<std::size_t> degree(spec.n, 0);
  for (std::size_t k = 0; k < spec.n; ++k) {
    sets[k / spec.s].push_back(order[k]);
    ++degree[order[k]];
  }
  for (std::size_t id = planted; id < spec.m; ++id) {
    fill_random(rng, sets[id], draw_size(rng, spec.s, spec.n), degree, spec.t);
  }
  patch_empty_sets(rng, sets, degree, spec.t);
  std::shuffle(sets.begin(), sets.end(), rng);
  canonicalize(sets);
  return {SetSystem(spec.n, std::move(sets), spec.s, spec.t), planted};
}

Instance generate_chain(const InstanceSpec& spec, Rng& rng) {
  const std::size_t n = spec.n;
  const std::size_t m = spec.m;
  const std::size_t min_len = (n + m - 1) / m;
  const std::size_t offset = uniform_index(rng, n);
  for (std::size_t len = std::min(spec.s, n); len >= min_len && len > 0; --len) {
    std::vector<std::vector<ElementId>> sets(m);
    std::vector<std::size_t> degree(n, 0);
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t start = j * n / m + offset;
      for (std::size_t x = 0; x < len; ++x) {
        const auto e = static_cast<ElementId>((start + x) % n);
        sets[j].push_back(e);
        ++degree[e];
      }
    }
    if (*std::max_element(degree.begin(), degree.end()) <= spec.t) {
      canonicalize(sets);
      return {SetSystem(n, std::move(sets), spec.s, spec.t), std::nullopt};
    }
  }
  throw ConstructionError("chain windows cannot respect both s and t");
}

}  // namespace

Instance generate(const InstanceSpec& spec) {
  check_common(spec);
  Rng rng(spec.seed ^ (0x5EEDULL + static_cast<std::uint64_t>(spec.kind)));
  switch (spec.kind) {
    case InstanceKind::UniformRandom:
      return generate_uniform(spec, rng);
    case InstanceKind::PlantedCover:
      return generate_planted(spec, rng);
    case InstanceKind::WorstCaseChain:
      return generate_chain(spec, rng);
  }
  throw ConstructionError("unknown instance kind");
}

// ---------------------------------------------------------------------------
// Text format

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::uint64_t> parse_numbers(std::string_view text, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::uint64_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || (ptr != last && *ptr != ' ' && *ptr != '\t')) {
      throw ParseError(line_no, "malformed token");
    }
    out.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

bool is_blank(std::string_view text) {
  return text.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::size_t header_line = 0;
  std::optional<std::array<std::uint64_t, 4>> header;
  std::optional<std::size_t> planted;
  std::vector<std::vector<ElementId>> sets;
  std::vector<std::size_t> set_lines;
  bool trailing_blank = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line(raw);
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos && line[first] == '#') {
      std::istringstream meta(std::string(line.substr(first + 1)));
      std::string key;
      std::size_t value = 0;
      if (meta >> key && key == "planted_opt") {
        if (!(meta >> value)) throw ParseError(line_no, "malformed planted_opt metadata");
        planted = value;
      }
      continue;
    }
    if (!header) {
      if (is_blank(line)) throw ParseError(line_no, "missing header 'n m s t'");
      auto nums = parse_numbers(line, line_no);
      if (nums.size() != 4) throw ParseError(line_no, "header must be 'n m s t'");
      header = std::array<std::uint64_t, 4>{nums[0], nums[1], nums[2], nums[3]};
      header_line = line_no;
      continue;
    }
    if (is_blank(line)) {
      if (sets.size() < (*header)[1]) throw ParseError(line_no, "empty set line");
      trailing_blank = true;
      continue;
    }
    if (trailing_blank || sets.size() >= (*header)[1]) {
      throw ParseError(line_no, "more set lines than m in header");
    }
    auto nums = parse_numbers(line, line_no);
    std::vector<ElementId> set;
    set.reserve(nums.size());
    for (std::size_t k = 0; k < nums.size(); ++k) {
      if (nums[k] >= (*header)[0]) throw ParseError(line_no, "element id out of range");
      if (k > 0 && nums[k] == nums[k - 1]) throw ParseError(line_no, "duplicate element in set");
      if (k > 0 && nums[k] < nums[k - 1]) throw ParseError(line_no, "set is not sorted");
      set.push_back(static_cast<ElementId>(nums[k]));
    }
    if (set.size() > (*header)[2]) throw ParseError(line_no, "set size exceeds header s");
    sets.push_back(std::move(set));
    set_lines.push_back(line_no);
  }

  if (!header) throw ParseError(line_no, "missing header 'n m s t'");
  const auto [n, m, s, t] = *header;
  if (n == 0 || m == 0 || s == 0 || t == 0) {
    throw ParseError(header_line, "header values must be positive");
  }
  if (sets.size() != m) throw ParseError(line_no, "fewer set lines than m in header");

  std::vector<std::size_t> degree(n, 0);
  for (std::size_t id = 0; id < sets.size(); ++id) {
    for (ElementId e : sets[id]) {
      if (++degree[e] > t) throw ParseError(set_lines[id], "element degree exceeds header t");
    }
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (degree[e] == 0) {
      throw ParseError(header_line, "element " + std::to_string(e) + " is in no set");
    }
  }
  return {SetSystem(n, std::move(sets), s, t), planted};
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string format_instance(const Instance& instance) {
  const auto& sys = instance.system;
  std::string out;
  out += std::to_string(sys.num_elements()) + ' ' + std::to_string(sys.num_sets()) + ' ' +
         std::to_string(sys.s()) + ' ' + std::to_string(sys.t()) + '\n';
  for (SetId id = 0; id < sys.num_sets(); ++id) {
    bool first = true;
    for (ElementId e : sys.elements_of(id)) {
      if (!first) out += ' ';
      out += std::to_string(e);
      first = false;
    }
    out += '\n';
  }
  if (instance.planted_opt) out += "# planted_opt " + std::to_string(*instance.planted_opt) + '\n';
  return out;
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << format_instance(instance);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sclca
