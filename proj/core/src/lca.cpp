#include "sclca/lca.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sclca/global.hpp"

namespace sclca {

namespace {

// Tri-state answers (-1 unknown) in dense per-slot tables. The layout is fixed
// at construction, so references into a table stay valid during recursion.
class Memo {
 public:
  std::size_t add(std::size_t size) {
    sizes_.push_back(size);
    return sizes_.size() - 1;
  }
  void seal() { data_.resize(sizes_.size()); }
  std::int8_t& at(std::size_t slot, std::size_t id) {
    auto& v = data_[slot];
    if (v.empty()) v.assign(sizes_[slot], -1);
    return v[id];
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::int8_t>> data_;
};

std::size_t ceil_count(double x) { return static_cast<std::size_t>(std::ceil(x)); }

class EngineBase {
 protected:
  explicit EngineBase(OracleContext& ctx)
      : sys_(*ctx.sys),
        tape_(ctx.tape),
        p_(ctx.params),
        meter_(ctx.meter),
        final_level_(p_.log_s + 1),
        seen_set_(p_.log_s + 2),
        seen_elem_(p_.log_s + 2) {}

  std::size_t n() const { return sys_.num_elements(); }
  std::size_t m() const { return sys_.num_sets(); }

  // One charged query per (level, id); later uses at the same level are free.
  std::span<const ElementId> set_adj(std::uint32_t level, SetId s) {
    auto& seen = seen_set_[level];
    if (seen.empty()) seen.assign(m(), 0);
    if (!seen[s]) {
      seen[s] = 1;
      return query_set(sys_, s, meter_, level);
    }
    return sys_.elements_of(s);
  }

  std::span<const SetId> elem_adj(std::uint32_t level, ElementId e) {
    auto& seen = seen_elem_[level];
    if (seen.empty()) seen.assign(n(), 0);
    if (!seen[e]) {
      seen[e] = 1;
      return query_element(sys_, e, meter_, level);
    }
    return sys_.sets_containing(e);
  }

  // Whether at least `need` elements of B_sample_stage(s) satisfy pred.
  template <class Pred>
  bool sampled_at_least(std::uint32_t level, std::uint32_t sample_stage, SetId s,
                        std::size_t need, Pred&& pred) {
    if (need == 0) return true;
    const auto elems = set_adj(level, s);
    const double prob = p_.sample_probability(sample_stage);
    std::size_t left = 0;
    for (ElementId x : elems) left += tape_.coin(ElemSample{sample_stage, s, x}, prob) ? 1 : 0;
    if (left < need) return false;
    std::size_t c = 0;
    for (ElementId x : elems) {
      if (!tape_.coin(ElemSample{sample_stage, s, x}, prob)) continue;
      --left;
      if (pred(x) && ++c >= need) return true;
      if (c + left < need) return false;
    }
    return false;
  }

  // Whether at least `need` sets containing e satisfy pred.
  template <class Pred>
  bool containing_at_least(std::uint32_t level, ElementId e, std::size_t need, Pred&& pred) {
    if (need == 0) return true;
    const auto sets = elem_adj(level, e);
    std::size_t left = sets.size();
    if (left < need) return false;
    std::size_t c = 0;
    for (SetId s : sets) {
      --left;
      if (pred(s) && ++c >= need) return true;
      if (c + left < need) return false;
    }
    return false;
  }

  template <class Pred>
  bool any_containing(std::uint32_t level, ElementId e, Pred&& pred) {
    for (SetId s : elem_adj(level, e)) {
      if (pred(s)) return true;
    }
    return false;
  }

  template <class Live>
  bool large(std::uint32_t stage, SetId s, Live&& live) {
    return sampled_at_least(stage, stage, s, p_.min_large_count(stage), live);
  }

  template <class Live>
  bool bad_set(std::uint32_t stage, SetId s, Live&& live) {
    if (sampled_at_least(stage, stage, s, ceil_count(p_.lambda10), live)) return true;
    if (p_.bad_set_rule == BadSetRule::Literal) return false;
    for (std::uint32_t i2 = stage + 1; i2 <= p_.log_s; ++i2) {
      const auto need = ceil_count(std::ldexp(p_.lambda10, static_cast<int>(i2 - stage)));
      if (sampled_at_least(stage, i2, s, need, live)) return true;
    }
    return false;
  }

  void check_set(SetId s) const {
    if (s >= m()) throw std::out_of_range("set id " + std::to_string(s) + " out of range");
  }
  void check_element(ElementId e) const {
    if (e >= n()) throw std::out_of_range("element id " + std::to_string(e) + " out of range");
  }

  // Final membership: chosen by the end, or the smallest-id set of some
  // element no chosen set covers.
  template <class ChosenEnd>
  bool final_member(SetId s, ChosenEnd&& chosen_end) {
    if (chosen_end(s)) return true;
    for (ElementId e : set_adj(final_level_, s)) {
      const auto sets = elem_adj(final_level_, e);
      if (sets.front() != s) continue;
      if (!any_containing(final_level_, e, chosen_end)) return true;
    }
    return false;
  }

  // Covering set: earliest add round among containing sets, then smallest id.
  template <class AddRound>
  ElementAnswer final_element(ElementId e, AddRound&& add_round) {
    const auto sets = elem_adj(final_level_, e);
    std::optional<std::pair<std::uint32_t, SetId>> best;
    for (SetId s : sets) {
      if (const auto r = add_round(s)) {
        const std::pair<std::uint32_t, SetId> cand{*r, s};
        if (!best || cand < *best) best = cand;
      }
    }
    if (!best) return {true, sets.front()};
    return {true, best->second};
  }

  const SetSystem& sys_;
  const RandomTape& tape_;
  const AlgoParams& p_;
  QueryMeter& meter_;
  const std::uint32_t final_level_;
  Memo memo_;

 private:
  std::vector<std::vector<std::uint8_t>> seen_set_;
  std::vector<std::vector<std::uint8_t>> seen_elem_;
};

#define SCLCA_MEMO(slot, id, expr)              \
  do {                                          \
    std::int8_t& cell_ = memo_.at((slot), (id)); \
    if (cell_ < 0) cell_ = (expr) ? 1 : 0;      \
    return cell_ != 0;                          \
  } while (0)

class SqrtEngine : EngineBase {
 public:
  explicit SqrtEngine(OracleContext& ctx) : EngineBase(ctx) {
    std::uint32_t round = 0;
    for (std::uint32_t i = 1; i <= p_.log_s; ++i) {
      for (std::uint32_t first = 1; first <= p_.log_t; first += p_.phase_len) {
        Phase ph;
        ph.stage = i;
        ph.first_k = first;
        ph.len = std::min(p_.log_t, first + p_.phase_len - 1) - first + 1;
        ph.round = round;
        round += 1 + ph.len;
        ph.badset = memo_.add(m());
        ph.live_pre = memo_.add(n());
        ph.pretend = memo_.add(n());
        ph.hat = memo_.add(m());
        for (std::uint32_t l = 1; l < ph.len; ++l) memo_.add(m());
        ph.added = memo_.add(m());
        for (std::uint32_t l = 1; l < ph.len; ++l) memo_.add(m());
        ph.live = memo_.add(n());
        for (std::uint32_t l = 1; l <= ph.len; ++l) memo_.add(n());
        ph.chosen = memo_.add(m());
        for (std::uint32_t l = 1; l <= ph.len; ++l) memo_.add(m());
        phases_.push_back(ph);
      }
    }
    memo_.seal();
    pretend_need_ = ceil_count(std::ldexp(p_.lambda10, static_cast<int>(p_.phase_len)));
  }

  bool set(SetId s) {
    check_set(s);
    const int last = static_cast<int>(phases_.size()) - 1;
    return final_member(s, [&](SetId x) { return chosen_end(last, x); });
  }

  ElementAnswer element(ElementId e) {
    check_element(e);
    return final_element(e, [&](SetId s) { return add_round(s); });
  }

 private:
  struct Phase {
    std::uint32_t stage = 0;
    std::uint32_t first_k = 0;
    std::uint32_t len = 0;
    std::uint32_t round = 0;  // bad-set round; iteration l runs in round + 1 + l
    std::size_t badset = 0, live_pre = 0, pretend = 0, hat = 0, added = 0, live = 0, chosen = 0;
  };

  bool chosen_end(int q, SetId s) { return q < 0 ? false : chosen(q, phases_[q].len, s); }
  bool live_end(int q, ElementId e) { return q < 0 ? true : live(q, phases_[q].len, e); }

  bool badset(int q, SetId s) {
    const auto& ph = phases_[q];
    SCLCA_MEMO(ph.badset, s,
               !chosen_end(q - 1, s) &&
                   bad_set(ph.stage, s, [&](ElementId x) { return live_end(q - 1, x); }));
  }

  bool chosen_pre(int q, SetId s) { return chosen_end(q - 1, s) || badset(q, s); }

  bool live_pre(int q, ElementId e) {
    const auto& ph = phases_[q];
    SCLCA_MEMO(ph.live_pre, e,
               live_end(q - 1, e) &&
                   !any_containing(ph.stage, e, [&](SetId s) { return badset(q, s); }));
  }

  bool hat(int q, std::uint32_t l, SetId s) {
    const auto& ph = phases_[q];
    SCLCA_MEMO(ph.hat + l, s,
               in_S_ik(tape_, ph.stage, ph.first_k + l, s, p_.t) && !chosen_pre(q, s) &&
                   large(ph.stage, s, [&](ElementId x) { return live_pre(q, x); }));
  }

  bool pretend(int q, ElementId e) {
    const auto& ph = phases_[q];
    SCLCA_MEMO(ph.pretend, e, live_pre(q, e) && dense(q, e));
  }

  bool dense(int q, ElementId e) {
    const auto& ph = phases_[q];
    for (std::uint32_t l = 0; l < ph.len; ++l) {
      if (containing_at_least(ph.stage, e, pretend_need_,
                              [&](SetId s) { return hat(q, l, s); })) {
        return true;
      }
    }
    return false;
  }

  bool live(int q, std::uint32_t l, ElementId e) {
    const auto& ph = phases_[q];
    if (l == 0) {
      SCLCA_MEMO(ph.live, e, live_pre(q, e) && !pretend(q, e));
    }
    SCLCA_MEMO(ph.live + l, e,
               live(q, l - 1, e) &&
                   !any_containing(ph.stage, e, [&](SetId s) { return added(q, l - 1, s); }));
  }

  bool chosen(int q, std::uint32_t l, SetId s) {
    const auto& ph = phases_[q];
    if (l == 0) {
      SCLCA_MEMO(ph.chosen, s, chosen_pre(q, s));
    }
    SCLCA_MEMO(ph.chosen + l, s, chosen(q, l - 1, s) || added(q, l - 1, s));
  }

  bool added(int q, std::uint32_t l, SetId s) {
    const auto& ph = phases_[q];
    SCLCA_MEMO(ph.added + l, s,
               hat(q, l, s) && !chosen(q, l, s) &&
                   large(ph.stage, s, [&](ElementId x) { return live(q, l, x); }));
  }

  std::optional<std::uint32_t> add_round(SetId s) {
    for (int q = 0; q < static_cast<int>(phases_.size()); ++q) {
      if (!chosen_end(q, s)) continue;
      const auto& ph = phases_[q];
      if (badset(q, s)) return ph.round;
      for (std::uint32_t l = 0; l < ph.len; ++l) {
        if (chosen(q, l + 1, s)) return ph.round + 1 + l;
      }
      throw std::logic_error("set chosen in a phase without an add step");
    }
    return std::nullopt;
  }

  std::vector<Phase> phases_;
  std::size_t pretend_need_ = 0;
};

class RecSplitEngine : EngineBase {
 public:
  explicit RecSplitEngine(OracleContext& ctx) : EngineBase(ctx) {
    build(1, p_.log_t, -1);
    for (std::uint32_t i = 1; i <= p_.log_s; ++i) {
      StageSlots st;
      st.badset = memo_.add(m());
      st.live_pre = memo_.add(n());
      st.pretend = memo_.add(n());
      st.hat = memo_.add(m());
      for (std::uint32_t k = 2; k <= p_.log_t; ++k) memo_.add(m());
      for (const Node& v : nodes_) {
        NodeSlots ns;
        ns.fam = memo_.add(m());
        for (std::uint32_t l = 1; l < v.R; ++l) memo_.add(m());
        ns.chosen_in = memo_.add(m());
        ns.live_in = memo_.add(n());
        if (v.first >= 0) {
          const std::uint32_t r2 = v.R - v.R / 2;
          ns.mid_fam = memo_.add(m());
          for (std::uint32_t l = 1; l < r2; ++l) memo_.add(m());
          ns.mid_pretend = memo_.add(n());
        } else {
          ns.bchosen = memo_.add(m());
          for (std::uint32_t r = 1; r <= v.R; ++r) memo_.add(m());
          ns.blive = memo_.add(n());
          for (std::uint32_t r = 1; r <= v.R; ++r) memo_.add(n());
          ns.badd = memo_.add(m());
          for (std::uint32_t r = 1; r < v.R; ++r) memo_.add(m());
        }
        st.nodes.push_back(ns);
      }
      stages_.push_back(std::move(st));
    }
    memo_.seal();
  }

  bool set(SetId s) {
    check_set(s);
    return final_member(s, [&](SetId x) { return chosen_end(p_.log_s, x); });
  }

  ElementAnswer element(ElementId e) {
    check_element(e);
    return final_element(e, [&](SetId s) { return add_round(s); });
  }

 private:
  struct Node {
    std::uint32_t k_lo = 0;
    std::uint32_t R = 0;
    int parent = -1;
    int first = -1;
    int second = -1;
  };
  struct NodeSlots {
    std::size_t fam = 0, chosen_in = 0, live_in = 0, mid_fam = 0, mid_pretend = 0;
    std::size_t bchosen = 0, blive = 0, badd = 0;
  };
  struct StageSlots {
    std::size_t badset = 0, live_pre = 0, pretend = 0, hat = 0;
    std::vector<NodeSlots> nodes;
  };

  int build(std::uint32_t k_lo, std::uint32_t R, int parent) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({k_lo, R, parent, -1, -1});
    if (R > p_.base_case_R) {
      const std::uint32_t r1 = R / 2;
      const int f = build(k_lo, r1, idx);
      const int s = build(k_lo + r1, R - r1, idx);
      nodes_[idx].first = f;
      nodes_[idx].second = s;
    }
    return idx;
  }

  const StageSlots& slots(std::uint32_t i) const { return stages_[i - 1]; }
  const NodeSlots& slots(std::uint32_t i, int v) const { return stages_[i - 1].nodes[v]; }

  // Stage glue.
  bool chosen_end(std::uint32_t i, SetId s) { return i == 0 ? false : chosen_out(i, 0, s); }
  bool live_end(std::uint32_t i, ElementId e) { return i == 0 ? true : live_out(i, 0, e); }

  bool badset(std::uint32_t i, SetId s) {
    SCLCA_MEMO(slots(i).badset, s,
               !chosen_end(i - 1, s) &&
                   bad_set(i, s, [&](ElementId x) { return live_end(i - 1, x); }));
  }

  bool chosen_pre(std::uint32_t i, SetId s) { return chosen_end(i - 1, s) || badset(i, s); }

  bool live_pre(std::uint32_t i, ElementId e) {
    SCLCA_MEMO(slots(i).live_pre, e,
               live_end(i - 1, e) &&
                   !any_containing(i, e, [&](SetId s) { return badset(i, s); }));
  }

  bool hat(std::uint32_t i, std::uint32_t k, SetId s) {
    SCLCA_MEMO(slots(i).hat + (k - 1), s,
               in_S_ik(tape_, i, k, s, p_.t) && !chosen_pre(i, s) &&
                   large(i, s, [&](ElementId x) { return live_pre(i, x); }));
  }

  bool stage_pretend(std::uint32_t i, ElementId e) {
    SCLCA_MEMO(slots(i).pretend, e, live_pre(i, e) && stage_dense(i, e));
  }

  bool stage_dense(std::uint32_t i, ElementId e) {
    for (std::uint32_t k = 1; k <= p_.log_t; ++k) {
      const auto need = ceil_count(std::ldexp(p_.lambda10, static_cast<int>(k)));
      if (containing_at_least(i, e, need, [&](SetId s) { return hat(i, k, s); })) return true;
    }
    return false;
  }

  // Recursion tree.
  bool fam(std::uint32_t i, int v, std::uint32_t l, SetId s) {
    SCLCA_MEMO(slots(i, v).fam + l, s, fam_eval(i, v, l, s));
  }

  bool fam_eval(std::uint32_t i, int v, std::uint32_t l, SetId s) {
    const int par = nodes_[v].parent;
    if (par < 0) return hat(i, nodes_[v].k_lo + l, s);
    return is_first_child(v) ? fam(i, par, l, s) : mid_fam(i, par, l, s);
  }

  bool is_first_child(int v) const {
    const int par = nodes_[v].parent;
    return par >= 0 && nodes_[par].first == v;
  }

  bool chosen_in(std::uint32_t i, int v, SetId s) {
    const int par = nodes_[v].parent;
    SCLCA_MEMO(slots(i, v).chosen_in, s,
               par < 0               ? chosen_pre(i, s)
               : is_first_child(v)   ? chosen_in(i, par, s)
                                     : chosen_out(i, nodes_[par].first, s));
  }

  bool live_in(std::uint32_t i, int v, ElementId e) {
    const int par = nodes_[v].parent;
    SCLCA_MEMO(slots(i, v).live_in, e,
               par < 0 ? live_pre(i, e) && !stage_pretend(i, e)
               : is_first_child(v)
                   ? live_in(i, par, e)
                   : live_out(i, nodes_[par].first, e) && !mid_pretend(i, par, e));
  }

  bool chosen_out(std::uint32_t i, int v, SetId s) {
    const Node& node = nodes_[v];
    if (node.first >= 0) return chosen_out(i, node.second, s);
    return bchosen(i, v, node.R, s);
  }

  bool live_out(std::uint32_t i, int v, ElementId e) {
    const Node& node = nodes_[v];
    if (node.first >= 0) return live_out(i, node.second, e);
    return blive(i, v, node.R, e);
  }

  bool mid_fam(std::uint32_t i, int v, std::uint32_t l, SetId s) {
    const Node& node = nodes_[v];
    const std::uint32_t r1 = node.R / 2;
    SCLCA_MEMO(slots(i, v).mid_fam + l, s,
               fam(i, v, r1 + l, s) && !chosen_out(i, node.first, s) &&
                   large(i, s, [&](ElementId x) { return live_out(i, node.first, x); }));
  }

  bool mid_pretend(std::uint32_t i, int v, ElementId e) {
    const Node& node = nodes_[v];
    SCLCA_MEMO(slots(i, v).mid_pretend, e, live_out(i, node.first, e) && mid_dense(i, v, e));
  }

  bool mid_dense(std::uint32_t i, int v, ElementId e) {
    const Node& node = nodes_[v];
    const std::uint32_t r2 = node.R - node.R / 2;
    for (std::uint32_t l = 0; l < r2; ++l) {
      const auto need = ceil_count(std::ldexp(p_.lambda10, static_cast<int>(l)));
      if (containing_at_least(i, e, need, [&](SetId s) { return mid_fam(i, v, l, s); })) {
        return true;
      }
    }
    return false;
  }

  bool bchosen(std::uint32_t i, int v, std::uint32_t r, SetId s) {
    if (r == 0) {
      SCLCA_MEMO(slots(i, v).bchosen, s, chosen_in(i, v, s));
    }
    SCLCA_MEMO(slots(i, v).bchosen + r, s, bchosen(i, v, r - 1, s) || badd(i, v, r - 1, s));
  }

  bool blive(std::uint32_t i, int v, std::uint32_t r, ElementId e) {
    if (r == 0) {
      SCLCA_MEMO(slots(i, v).blive, e, live_in(i, v, e));
    }
    SCLCA_MEMO(slots(i, v).blive + r, e,
               blive(i, v, r - 1, e) &&
                   !any_containing(i, e, [&](SetId s) { return badd(i, v, r - 1, s); }));
  }

  bool badd(std::uint32_t i, int v, std::uint32_t r, SetId s) {
    SCLCA_MEMO(slots(i, v).badd + r, s,
               fam(i, v, r, s) && !bchosen(i, v, r, s) &&
                   large(i, s, [&](ElementId x) { return blive(i, v, r, x); }));
  }

  std::optional<std::uint32_t> add_round(SetId s) {
    for (std::uint32_t i = 1; i <= p_.log_s; ++i) {
      if (!chosen_end(i, s)) continue;
      if (badset(i, s)) return recsplit_round(p_, i, 0);
      for (int v = 0; v < static_cast<int>(nodes_.size()); ++v) {
        const Node& node = nodes_[v];
        if (node.first >= 0 || !bchosen(i, v, node.R, s)) continue;
        for (std::uint32_t r = 0; r < node.R; ++r) {
          if (bchosen(i, v, r + 1, s)) return recsplit_round(p_, i, node.k_lo + r);
        }
      }
      throw std::logic_error("set chosen in a stage without an add step");
    }
    return std::nullopt;
  }

  std::vector<Node> nodes_;
  std::vector<StageSlots> stages_;
};

#undef SCLCA_MEMO

template <class Fn>
auto metered(OracleContext& ctx, Fn&& fn) {
  const auto before = ctx.meter.count();
  auto out = fn();
  ctx.last_queries = ctx.meter.count() - before;
  return out;
}

}  // namespace

bool oracle_sqrt_set(OracleContext& ctx, SetId set) {
  return metered(ctx, [&] { return SqrtEngine(ctx).set(set); });
}

ElementAnswer oracle_sqrt_element(OracleContext& ctx, ElementId e) {
  return metered(ctx, [&] { return SqrtEngine(ctx).element(e); });
}

bool oracle_recsplit_set(OracleContext& ctx, SetId set) {
  return metered(ctx, [&] { return RecSplitEngine(ctx).set(set); });
}

ElementAnswer oracle_recsplit_element(OracleContext& ctx, ElementId e) {
  return metered(ctx, [&] { return RecSplitEngine(ctx).element(e); });
}

std::string to_string(OracleAlgo algo) {
  return algo == OracleAlgo::Sqrt ? "sqrt" : "recsplit";
}

OracleAlgo parse_oracle_algo(const std::string& text) {
  if (text == "sqrt") return OracleAlgo::Sqrt;
  if (text == "recsplit") return OracleAlgo::RecSplit;
  throw std::invalid_argument("unknown oracle algorithm '" + text + "'");
}

std::string QueryProfile::csv_header() { return "algo,n,m,s,t,seed,calls,q_max,q_mean,q_total"; }

std::string QueryProfile::csv_row() const {
  std::ostringstream out;
  out << algo << ',' << n << ',' << m << ',' << s << ',' << t << ',' << seed << ',' << calls
      << ',' << q_max << ',';
  out.setf(std::ios::fixed);
  out.precision(3);
  out << q_mean << ',' << q_total;
  return out.str();
}

QueryProfile profile(const OracleContext& tmpl, OracleAlgo algo, TargetKind kind,
                     std::span<const std::uint32_t> sample) {
  if (sample.empty()) throw std::invalid_argument("profile needs a non-empty sample");
  const SetSystem& sys = *tmpl.sys;
  QueryProfile prof;
  prof.algo = to_string(algo);
  prof.n = sys.num_elements();
  prof.m = sys.num_sets();
  prof.s = sys.s();
  prof.t = sys.t();
  prof.seed = tmpl.tape.seed();
  for (std::uint32_t id : sample) {
    OracleContext ctx(sys, tmpl.tape, tmpl.params, tmpl.meter.cap());
    if (kind == TargetKind::Set) {
      algo == OracleAlgo::Sqrt ? (void)oracle_sqrt_set(ctx, id)
                               : (void)oracle_recsplit_set(ctx, id);
    } else {
      algo == OracleAlgo::Sqrt ? (void)oracle_sqrt_element(ctx, id)
                               : (void)oracle_recsplit_element(ctx, id);
    }
    const auto q = ctx.meter.count();
    prof.per_call.push_back(q);
    prof.q_total += q;
    prof.q_max = std::max(prof.q_max, q);
    const auto& lv = ctx.meter.by_level();
    if (prof.by_level.size() < lv.size()) prof.by_level.resize(lv.size(), 0);
    for (std::size_t j = 0; j < lv.size(); ++j) prof.by_level[j] += lv[j];
  }
  prof.calls = sample.size();
  prof.q_mean = static_cast<double>(prof.q_total) / static_cast<double>(prof.calls);
  return prof;
}

}  // namespace sclca
