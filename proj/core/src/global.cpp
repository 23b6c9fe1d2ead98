#include "sclca/global.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sclca {

std::uint32_t generic_round(const AlgoParams& p, std::uint32_t stage, std::uint32_t iteration) {
  return (stage - 1) * p.log_t + (iteration - 1);
}

std::uint32_t recsplit_round(const AlgoParams& p, std::uint32_t stage, std::uint32_t iteration) {
  return (stage - 1) * (p.log_t + 1) + iteration;
}

namespace {

RunReport make_report(const char* algo, const SetSystem& sys, const RandomTape& tape,
                      const AlgoParams& p) {
  RunReport r;
  r.algo = algo;
  r.n = sys.num_elements();
  r.m = sys.num_sets();
  r.s = sys.s();
  r.t = sys.t();
  r.seed = tape.seed();
  const std::size_t widest = std::max<std::size_t>(1, sys.max_set_size());
  r.opt_lb = (r.n + widest - 1) / widest;
  r.per_stage_sizes.assign(p.log_s, 0);
  return r;
}

void close_report(RunReport& r, const CoverState& st) {
  r.cover_size = st.cover_size();
  r.bad_set_events = st.count_events(EventKind::BadSetAdd);
  r.pretend_events = st.count_events(EventKind::Pretend);
  r.cleanup_adds = st.count_events(EventKind::CleanupAdd);
  r.rounds = st.rounds();
}

// Sampled run: per-stage samples B_i(S) and incremental counts of live
// sampled elements per set.
class SampledRun {
 public:
  SampledRun(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p, const char* algo)
      : sys_(sys),
        tape_(tape),
        p_(p),
        state_(sys.num_elements(), sys.num_sets()),
        report_(make_report(algo, sys, tape, p)) {}

  void begin_stage(std::uint32_t stage) {
    stage_ = stage;
    const double prob = p_.sample_probability(stage);
    const std::size_t m = sys_.num_sets();
    sample_.assign(m, {});
    sampled_by_.assign(sys_.num_elements(), {});
    live_count_.assign(m, 0);
    for (SetId s = 0; s < m; ++s) {
      for (ElementId e : sys_.elements_of(s)) {
        if (!tape_.coin(ElemSample{stage, s, e}, prob)) continue;
        sample_[s].push_back(e);
        sampled_by_[e].push_back(s);
        if (state_.is_live(e)) ++live_count_[s];
      }
    }
  }

  bool large(SetId s) const {
    return !state_.is_chosen(s) && p_.is_large(live_count_[s], stage_);
  }

  bool candidate(std::uint32_t k, SetId s) const {
    return in_S_ik(tape_, stage_, k, s, p_.t);
  }

  // Sets of the (stage, k) family that are currently large.
  std::vector<SetId> large_candidates(std::uint32_t k) const {
    std::vector<SetId> out;
    for (SetId s = 0; s < sys_.num_sets(); ++s) {
      if (large(s) && candidate(k, s)) out.push_back(s);
    }
    return out;
  }

  std::vector<SetId> still_large(const std::vector<SetId>& family) const {
    std::vector<SetId> out;
    for (SetId s : family) {
      if (large(s)) out.push_back(s);
    }
    return out;
  }

  std::size_t add(std::vector<SetId> sets, std::uint32_t round, bool count_in_stage,
                  std::optional<EventKind> tag = std::nullopt) {
    const std::size_t before = state_.cover_size();
    if (tag) {
      std::sort(sets.begin(), sets.end());
      sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
      for (SetId s : sets) {
        if (!state_.is_chosen(s)) state_.log({round, *tag, s});
      }
    }
    for (ElementId e : state_.add_sets(sys_, std::move(sets), round)) {
      if (!state_.is_pretend(e)) drop(e);
    }
    const std::size_t added = state_.cover_size() - before;
    if (count_in_stage) report_.per_stage_sizes[stage_ - 1] += added;
    return added;
  }

  void pretend(ElementId e, std::uint32_t round) {
    if (state_.mark_pretend(e, round)) {
      state_.log({round, EventKind::Pretend, e});
      drop(e);
    }
  }

  // Bad-set force-add at the start of a phase or stage.
  void bad_set_step(std::uint32_t round) {
    std::vector<SetId> bad;
    for (SetId s = 0; s < sys_.num_sets(); ++s) {
      if (!state_.is_chosen(s) && is_bad(s)) bad.push_back(s);
    }
    add(std::move(bad), round, true, EventKind::BadSetAdd);
  }

  // Marks live elements contained in at least `limit(idx)` sets of families[idx].
  template <class Limit>
  void pretend_dense(const std::vector<std::vector<SetId>>& families, Limit limit,
                     std::uint32_t round) {
    std::vector<char> mark(sys_.num_elements(), 0);
    std::vector<std::uint32_t> cnt(sys_.num_elements(), 0);
    for (std::size_t idx = 0; idx < families.size(); ++idx) {
      std::fill(cnt.begin(), cnt.end(), 0);
      const double lim = limit(idx);
      for (SetId s : families[idx]) {
        for (ElementId e : sys_.elements_of(s)) {
          if (state_.is_live(e) && ++cnt[e] >= lim) mark[e] = 1;
        }
      }
    }
    for (ElementId e = 0; e < sys_.num_elements(); ++e) {
      if (mark[e]) pretend(e, round);
    }
  }

  void cleanup(std::uint32_t round) {
    std::vector<SetId> fix;
    for (ElementId e = 0; e < sys_.num_elements(); ++e) {
      if (!state_.is_covered(e)) fix.push_back(sys_.sets_containing(e).front());
    }
    add(std::move(fix), round, false, EventKind::CleanupAdd);
  }

  RunResult finish(std::uint32_t rounds) {
    state_.finish(rounds);
    close_report(report_, state_);
    return {std::move(state_), std::move(report_)};
  }

  const CoverState& state() const { return state_; }
  const SetSystem& sys() const { return sys_; }
  const AlgoParams& params() const { return p_; }

 private:
  void drop(ElementId e) {
    for (SetId s : sampled_by_[e]) --live_count_[s];
  }

  bool is_bad(SetId s) const {
    if (live_count_[s] >= p_.lambda10) return true;
    if (p_.bad_set_rule == BadSetRule::Literal) return false;
    for (std::uint32_t i2 = stage_ + 1; i2 <= p_.log_s; ++i2) {
      const double prob = p_.sample_probability(i2);
      std::size_t c = 0;
      for (ElementId e : sys_.elements_of(s)) {
        if (state_.is_live(e) && tape_.coin(ElemSample{i2, s, e}, prob)) ++c;
      }
      if (c >= std::ldexp(p_.lambda10, static_cast<int>(i2 - stage_))) return true;
    }
    return false;
  }

  const SetSystem& sys_;
  const RandomTape& tape_;
  const AlgoParams& p_;
  CoverState state_;
  RunReport report_;
  std::uint32_t stage_ = 0;
  std::vector<std::vector<ElementId>> sample_;
  std::vector<std::vector<SetId>> sampled_by_;
  std::vector<std::uint32_t> live_count_;
};

void check_invariant(const SampledRun& run, std::uint32_t k_lo,
                     const std::vector<std::vector<SetId>>& family, std::uint32_t stage) {
  const auto& sys = run.sys();
  const auto& st = run.state();
  std::vector<std::uint32_t> cnt(sys.num_elements(), 0);
  for (std::size_t l = 0; l < family.size(); ++l) {
    std::fill(cnt.begin(), cnt.end(), 0);
    const double bound = std::ldexp(run.params().lambda10, static_cast<int>(l + 1));
    for (SetId s : family[l]) {
      for (ElementId e : sys.elements_of(s)) {
        if (st.is_live(e) && ++cnt[e] > bound) {
          throw InvariantViolation("element " + std::to_string(e) + " lies in " +
                                   std::to_string(cnt[e]) + " sets of family " +
                                   std::to_string(k_lo + l) + " in stage " +
                                   std::to_string(stage));
        }
      }
    }
  }
}

// family[l] holds the sets for iteration k_lo + l.
void rec_split(SampledRun& run, std::uint32_t stage, std::uint32_t k_lo,
               const std::vector<std::vector<SetId>>& family) {
  const auto& p = run.params();
  const auto R = static_cast<std::uint32_t>(family.size());
  check_invariant(run, k_lo, family, stage);
  if (R <= p.base_case_R) {
    for (std::uint32_t l = 0; l < R; ++l) {
      run.add(run.still_large(family[l]), recsplit_round(p, stage, k_lo + l), true);
    }
    return;
  }
  const std::uint32_t r1 = R / 2;
  rec_split(run, stage, k_lo, {family.begin(), family.begin() + r1});
  const std::uint32_t k_mid = k_lo + r1;
  std::vector<std::vector<SetId>> rest;
  for (std::uint32_t l = r1; l < R; ++l) rest.push_back(run.still_large(family[l]));
  run.pretend_dense(
      rest, [&](std::size_t idx) { return std::ldexp(p.lambda10, static_cast<int>(idx)); },
      recsplit_round(p, stage, k_mid));
  rec_split(run, stage, k_mid, rest);
}

}  // namespace

RunResult run_base(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p) {
  const std::size_t m = sys.num_sets();
  CoverState st(sys.num_elements(), m);
  RunReport report = make_report("base", sys, tape, p);
  std::vector<std::size_t> free_count(m);
  for (SetId s = 0; s < m; ++s) free_count[s] = sys.elements_of(s).size();
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    const double threshold = p.size_threshold(i);
    for (std::uint32_t k = 1; k <= p.log_t; ++k) {
      std::vector<SetId> add;
      for (SetId s = 0; s < m; ++s) {
        if (st.is_chosen(s) || static_cast<double>(free_count[s]) < threshold) continue;
        if (in_S_ik(tape, i, k, s, p.t)) add.push_back(s);
      }
      const std::size_t before = st.cover_size();
      for (ElementId e : st.add_sets(sys, std::move(add), generic_round(p, i, k))) {
        for (SetId s : sys.sets_containing(e)) --free_count[s];
      }
      report.per_stage_sizes[i - 1] += st.cover_size() - before;
    }
  }
  st.finish(p.log_s * p.log_t);
  close_report(report, st);
  return {std::move(st), std::move(report)};
}

RunResult run_generic(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p) {
  SampledRun run(sys, tape, p, "generic");
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    run.begin_stage(i);
    for (std::uint32_t k = 1; k <= p.log_t; ++k) {
      run.add(run.large_candidates(k), generic_round(p, i, k), true);
    }
  }
  return run.finish(p.log_s * p.log_t);
}

RunResult run_sqrt(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p) {
  SampledRun run(sys, tape, p, "sqrt");
  std::uint32_t round = 0;
  const double pretend_limit = std::ldexp(p.lambda10, static_cast<int>(p.phase_len));
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    run.begin_stage(i);
    for (std::uint32_t first = 1; first <= p.log_t; first += p.phase_len) {
      const std::uint32_t last = std::min(p.log_t, first + p.phase_len - 1);
      run.bad_set_step(round++);
      std::vector<std::vector<SetId>> hat;
      for (std::uint32_t k = first; k <= last; ++k) hat.push_back(run.large_candidates(k));
      run.pretend_dense(hat, [&](std::size_t) { return pretend_limit; }, round);
      for (const auto& family : hat) run.add(run.still_large(family), round++, true);
    }
  }
  run.cleanup(round++);
  return run.finish(round);
}

RunResult run_recsplit(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p) {
  SampledRun run(sys, tape, p, "recsplit");
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    run.begin_stage(i);
    run.bad_set_step(recsplit_round(p, i, 0));
    std::vector<std::vector<SetId>> hat;
    for (std::uint32_t k = 1; k <= p.log_t; ++k) hat.push_back(run.large_candidates(k));
    run.pretend_dense(
        hat, [&](std::size_t idx) { return std::ldexp(p.lambda10, static_cast<int>(idx + 1)); },
        recsplit_round(p, i, 1));
    rec_split(run, i, 1, hat);
  }
  const std::uint32_t cleanup_round = p.log_s * (p.log_t + 1);
  run.cleanup(cleanup_round);
  return run.finish(cleanup_round + 1);
}

double estimate_degree(const SetSystem& sys, const RandomTape& tape, std::uint32_t stage,
                       SetId set, const std::function<bool(ElementId)>& free, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("sample probability must lie in (0, 1]");
  if (set >= sys.num_sets()) throw std::domain_error("set id out of range");
  std::size_t c = 0;
  for (ElementId e : sys.elements_of(set)) {
    if (free(e) && tape.coin(ElemSample{stage, set, e}, p)) ++c;
  }
  return static_cast<double>(c) / p;
}

double f_seq(std::span<const double> xs, double r) {
  if (xs.empty()) throw std::domain_error("f_seq needs a non-empty sequence");
  if (!(r > 0.0)) throw std::domain_error("f_seq needs r > 0");
  double total = 0.0;
  double exponent = 0.0;
  for (std::size_t k = 1; k <= xs.size(); ++k) {
    const double w = std::ldexp(xs[k - 1], static_cast<int>(k)) / r;
    total += w * std::exp(-exponent);
    exponent += w;
  }
  return total;
}

std::vector<std::uint32_t> stage_one_multiplicity(const SetSystem& sys, const RandomTape& tape,
                                                  const AlgoParams& params) {
  AlgoParams one = params;
  one.log_s = 1;
  const auto run = run_base(sys, tape, one);
  const auto& st = run.state;
  std::vector<std::uint32_t> x(sys.num_elements(), 0);
  for (ElementId e = 0; e < sys.num_elements(); ++e) {
    const auto r = st.covered_round(e);
    if (r == CoverState::kNever) continue;
    for (SetId s : sys.sets_containing(e)) {
      if (st.chosen_round(s) == r) ++x[e];
    }
  }
  return x;
}

namespace {

void require_finished(const CoverState& trace, const SetSystem& sys) {
  if (!trace.finished()) throw std::logic_error("trace is not a completed run");
  if (trace.num_elements() != sys.num_elements() || trace.num_sets() != sys.num_sets()) {
    throw std::invalid_argument("trace does not match the set system");
  }
}

// Free at the start of round r.
bool free_at(const CoverState& trace, ElementId e, std::int32_t r) {
  const auto c = trace.covered_round(e);
  return c == CoverState::kNever || c >= r;
}

bool unchosen_at(const CoverState& trace, SetId s, std::int32_t r) {
  const auto c = trace.chosen_round(s);
  return c == CoverState::kNever || c >= r;
}

}  // namespace

bool detect_bad_element(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p,
                        const CoverState& trace, ElementId e) {
  require_finished(trace, sys);
  const auto containing = sys.sets_containing(e);
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    const double prob = p.sample_probability(i);
    for (std::uint32_t k1 = 1; k1 <= p.log_t; ++k1) {
      const auto r = static_cast<std::int32_t>(generic_round(p, i, k1));
      if (!free_at(trace, e, r)) continue;
      std::vector<SetId> large;
      for (SetId s : containing) {
        if (!unchosen_at(trace, s, r)) continue;
        std::size_t c = 0;
        for (ElementId x : sys.elements_of(s)) {
          if (free_at(trace, x, r) && tape.coin(ElemSample{i, s, x}, prob)) ++c;
        }
        if (p.is_large(c, i)) large.push_back(s);
      }
      for (std::uint32_t k2 = k1; k2 <= p.log_t; ++k2) {
        std::size_t d = 0;
        for (SetId s : large) d += in_S_ik(tape, i, k2, s, p.t) ? 1 : 0;
        if (static_cast<double>(d) > std::ldexp(p.lambda10, static_cast<int>(k2 - k1))) {
          return true;
        }
      }
    }
  }
  return false;
}

bool detect_bad_set(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p,
                    const CoverState& trace, SetId set) {
  require_finished(trace, sys);
  if (set >= sys.num_sets()) throw std::domain_error("set id out of range");
  for (std::uint32_t i1 = 1; i1 <= p.log_s; ++i1) {
    const auto r = static_cast<std::int32_t>(generic_round(p, i1, 1));
    for (std::uint32_t i2 = i1; i2 <= p.log_s; ++i2) {
      const double prob = p.sample_probability(i2);
      std::size_t c = 0;
      for (ElementId x : sys.elements_of(set)) {
        if (free_at(trace, x, r) && tape.coin(ElemSample{i2, set, x}, prob)) ++c;
      }
      if (static_cast<double>(c) > std::ldexp(p.lambda10, static_cast<int>(i2 - i1))) {
        return true;
      }
    }
  }
  return false;
}

std::size_t BadEvents::bad_elements() const {
  return static_cast<std::size_t>(std::count(element.begin(), element.end(), 1));
}

std::size_t BadEvents::bad_sets() const {
  return static_cast<std::size_t>(std::count(set.begin(), set.end(), 1));
}

BadEvents detect_bad_events(const SetSystem& sys, const RandomTape& tape, const AlgoParams& p,
                            const CoverState& trace) {
  require_finished(trace, sys);
  const std::size_t n = sys.num_elements();
  const std::size_t m = sys.num_sets();
  BadEvents out{std::vector<char>(n, 0), std::vector<char>(m, 0)};
  // sampled[i2][s] lists B_i2(s).
  std::vector<std::vector<std::vector<ElementId>>> sampled(p.log_s + 1);
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    const double prob = p.sample_probability(i);
    sampled[i].resize(m);
    for (SetId s = 0; s < m; ++s) {
      for (ElementId x : sys.elements_of(s)) {
        if (tape.coin(ElemSample{i, s, x}, prob)) sampled[i][s].push_back(x);
      }
    }
  }
  auto free_count = [&](std::uint32_t i, SetId s, std::int32_t r) {
    std::size_t c = 0;
    for (ElementId x : sampled[i][s]) c += free_at(trace, x, r) ? 1 : 0;
    return c;
  };
  std::vector<char> large(m);
  std::vector<std::uint32_t> d(n);
  for (std::uint32_t i = 1; i <= p.log_s; ++i) {
    for (std::uint32_t k1 = 1; k1 <= p.log_t; ++k1) {
      const auto r = static_cast<std::int32_t>(generic_round(p, i, k1));
      for (SetId s = 0; s < m; ++s) {
        large[s] = unchosen_at(trace, s, r) && p.is_large(free_count(i, s, r), i);
      }
      for (std::uint32_t k2 = k1; k2 <= p.log_t; ++k2) {
        std::fill(d.begin(), d.end(), 0);
        for (SetId s = 0; s < m; ++s) {
          if (!large[s] || !in_S_ik(tape, i, k2, s, p.t)) continue;
          for (ElementId x : sys.elements_of(s)) ++d[x];
        }
        const double limit = std::ldexp(p.lambda10, static_cast<int>(k2 - k1));
        for (ElementId x = 0; x < n; ++x) {
          if (static_cast<double>(d[x]) > limit && free_at(trace, x, r)) out.element[x] = 1;
        }
      }
    }
  }
  for (std::uint32_t i1 = 1; i1 <= p.log_s; ++i1) {
    const auto r = static_cast<std::int32_t>(generic_round(p, i1, 1));
    for (std::uint32_t i2 = i1; i2 <= p.log_s; ++i2) {
      const double limit = std::ldexp(p.lambda10, static_cast<int>(i2 - i1));
      for (SetId s = 0; s < m; ++s) {
        if (static_cast<double>(free_count(i2, s, r)) > limit) out.set[s] = 1;
      }
    }
  }
  return out;
}

}  // namespace sclca
