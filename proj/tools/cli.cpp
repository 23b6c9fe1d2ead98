#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include "sclca/baselines.hpp"
#include "sclca/global.hpp"
#include "sclca/lca.hpp"

namespace sclca::cli {

std::size_t auto_sets(std::size_t n, std::size_t s) {
  if (s == 0) throw std::invalid_argument("s must be positive");
  return std::max((n + s - 1) / s, (n + 1) / 2);
}

AlgoParams ParamFlags::resolve(const SetSystem& sys) const {
  AlgoParams p;
  if (polylog) {
    if (lambda5 || lambda10) throw std::invalid_argument("--polylog cannot be combined with --lambda5/--lambda10");
    p = AlgoParams::polylog(sys);
  } else {
    p = AlgoParams::for_system(sys, lambda5.value_or(AlgoParams::kDefaultLambda5), lambda10);
  }
  if (bad_set_rule == "literal") {
    p.bad_set_rule = BadSetRule::Literal;
  } else if (bad_set_rule == "scaled") {
    p.bad_set_rule = BadSetRule::Scaled;
  } else {
    throw std::invalid_argument("unknown bad-set rule: " + bad_set_rule);
  }
  return p;
}

RunResult run_algorithm(const std::string& algo, const SetSystem& sys, const RandomTape& tape,
                        const AlgoParams& params) {
  if (algo == "base") return run_base(sys, tape, params);
  if (algo == "generic") return run_generic(sys, tape, params);
  if (algo == "sqrt") return run_sqrt(sys, tape, params);
  if (algo == "recsplit") return run_recsplit(sys, tape, params);
  if (algo == "greedy") {
    RunResult r{greedy_cover(sys), {}};
    auto& rep = r.report;
    rep.algo = "greedy";
    rep.n = sys.num_elements();
    rep.m = sys.num_sets();
    rep.s = sys.s();
    rep.t = sys.t();
    rep.seed = tape.seed();
    rep.cover_size = r.state.cover_size();
    rep.opt_lb = ns_lower_bound(sys);
    rep.rounds = r.state.rounds();
    return r;
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

void BenchConfig::validate() const {
  if (algos.empty() || n.empty() || s.empty() || t.empty() || kinds.empty()) {
    throw std::invalid_argument("bench grid must be non-empty");
  }
  if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
  for (const auto& a : algos) {
    if (std::find(kAlgos.begin(), kAlgos.end(), a) == kAlgos.end()) {
      throw std::invalid_argument("unknown algorithm: " + a);
    }
  }
  for (const auto& k : kinds) parse_instance_kind(k);
}

std::string bench_header() {
  return RunReport::csv_header() + ",kind,opt,opt_method,ratio,calls,q_max,q_mean,q_total";
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << v;
  return o.str();
}

bool is_oracle_algo(const std::string& algo) { return algo == "sqrt" || algo == "recsplit"; }

// Evenly spaced set ids, at most k of them.
std::vector<std::uint32_t> spread_ids(std::size_t m, std::size_t k) {
  std::vector<std::uint32_t> ids;
  if (k == 0 || m == 0) return ids;
  k = std::min(k, m);
  for (std::size_t j = 0; j < k; ++j) ids.push_back(static_cast<std::uint32_t>(j * m / k));
  return ids;
}

using CellKey = std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::size_t,
                           std::uint64_t>;  // kind, n, m, s, t, seed

struct OptInfo {
  std::size_t value = 0;
  OptMethod method = OptMethod::NsBound;
};

}  // namespace

std::size_t run_bench(const BenchConfig& config, std::ostream& out) {
  config.validate();
  auto algos = config.algos;
  std::sort(algos.begin(), algos.end());
  algos.erase(std::unique(algos.begin(), algos.end()), algos.end());

  std::vector<CellKey> cells;
  for (const auto& kind_text : config.kinds) {
    const auto kind = to_string(parse_instance_kind(kind_text));
    for (auto n : config.n) {
      for (auto s : config.s) {
        std::vector<std::size_t> ms = config.m;
        if (ms.empty()) ms.push_back(auto_sets(n, s));
        for (auto m : ms) {
          for (auto t : config.t) {
            for (std::size_t j = 0; j < config.seeds; ++j) {
              cells.emplace_back(kind, n, m, s, t, config.first_seed + j);
            }
          }
        }
      }
    }
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  out << kBenchSchema << '\n';
  out << "# queries count base-instance neighbor queries; q columns profile "
      << config.oracle_calls << " set targets per cell\n";
  out << bench_header() << '\n' << std::flush;

  std::map<CellKey, OptInfo> opt_cache;
  std::size_t rows = 0;
  for (const auto& algo : algos) {
    for (const auto& cell : cells) {
      const auto& [kind, n, m, s, t, seed] = cell;
      Instance inst{SetSystem::from_sets(1, {{0}}), std::nullopt};
      try {
        inst = generate({n, m, s, t, parse_instance_kind(kind), seed});
      } catch (const ConstructionError& e) {
        out << "# skipped " << algo << ' ' << kind << " n=" << n << " m=" << m << " s=" << s
            << " t=" << t << " seed=" << seed << ": " << e.what() << '\n'
            << std::flush;
        continue;
      }
      auto it = opt_cache.find(cell);
      if (it == opt_cache.end()) {
        const auto bound = opt_bound(inst);
        it = opt_cache.emplace(cell, OptInfo{bound.best_known(), bound.method}).first;
      }
      const auto& sys = inst.system;
      const RandomTape tape(seed);
      const auto params = config.params.resolve(sys);
      auto result = run_algorithm(algo, sys, tape, params);
      if (!is_valid_cover(sys, result.state)) {
        throw std::runtime_error(algo + " produced an invalid cover at seed " +
                                 std::to_string(seed));
      }
      result.report.opt_lb = std::max(result.report.opt_lb, ns_lower_bound(sys));
      const auto& opt = it->second;
      out << result.report.csv_row() << ',' << kind << ',' << opt.value << ','
          << to_string(opt.method) << ','
          << fixed(static_cast<double>(result.report.cover_size) / static_cast<double>(opt.value), 4);
      const auto ids = spread_ids(sys.num_sets(), config.oracle_calls);
      if (is_oracle_algo(algo) && !ids.empty()) {
        OracleContext ctx(sys, tape, params, config.meter_cap);
        const auto prof = profile(ctx, parse_oracle_algo(algo), TargetKind::Set, ids);
        out << ',' << prof.calls << ',' << prof.q_max << ',' << fixed(prof.q_mean, 3) << ','
            << prof.q_total;
      } else {
        out << ",,,,";
      }
      out << '\n' << std::flush;
      ++rows;
    }
  }
  return rows;
}

namespace {

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
  cmd->add_option("--lambda5", flags.lambda5, "Sampling multiplier (default 4)");
  cmd->add_option("--lambda10", flags.lambda10, "Bad-event multiplier (default 2*lambda5)");
  cmd->add_flag("--polylog", flags.polylog, "Use lambda5 = log s * log t, lambda10 = 2*lambda5");
  cmd->add_option("--bad-set-rule", flags.bad_set_rule, "literal or scaled")
      ->check(CLI::IsMember({"literal", "scaled"}));
}

void print_instance_summary(const Instance& inst, std::ostream& os) {
  const auto& sys = inst.system;
  os << "n=" << sys.num_elements() << " m=" << sys.num_sets() << " s=" << sys.s()
     << " t=" << sys.t();
  if (inst.planted_opt) os << " planted_opt=" << *inst.planted_opt;
  os << '\n';
}

struct GenArgs {
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::size_t s = 2;
  std::size_t t = 2;
  std::string kind = "uniform";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  InstanceSpec spec{a.n, a.m.value_or(auto_sets(a.n, a.s)), a.s, a.t,
                    parse_instance_kind(a.kind), a.seed};
  const auto inst = generate(spec);
  if (a.out.empty() || a.out == "-") {
    out << format_instance(inst);
    print_instance_summary(inst, err);
  } else {
    write_instance(inst, a.out);
    print_instance_summary(inst, out);
  }
  return kOk;
}

struct RunArgs {
  std::string algo = "sqrt";
  std::string instance;
  std::uint64_t seed = 0;
  ParamFlags params;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const auto inst = read_instance(a.instance);
  const auto& sys = inst.system;
  const auto params = a.params.resolve(sys);
  auto result = run_algorithm(a.algo, sys, RandomTape(a.seed), params);
  if (!is_valid_cover(sys, result.state)) {
    err << "error: " << a.algo << " returned an invalid cover ("
        << result.state.uncovered_count() << " elements uncovered)\n";
    return kMismatch;
  }
  const auto bound = opt_bound(inst);
  result.report.opt_lb = std::max(result.report.opt_lb, bound.lower_bound);
  if (bound.exact_opt) result.report.opt_lb = *bound.exact_opt;
  out << "# sclca-run v1\n";
  out << "# opt " << bound.best_known() << " method " << to_string(bound.method) << " ratio "
      << fixed(static_cast<double>(result.report.cover_size) /
                   static_cast<double>(bound.best_known()),
               4)
      << '\n';
  out << RunReport::csv_header() << '\n' << result.report.csv_row() << '\n';
  return kOk;
}

struct LcaArgs {
  std::string algo = "sqrt";
  std::string instance;
  std::uint64_t seed = 0;
  ParamFlags params;
  std::vector<std::uint32_t> targets;
  bool elements = false;
  std::optional<std::uint64_t> meter_cap;
  bool verify = false;
};

int cmd_lca(const LcaArgs& a, std::ostream& out, std::ostream& err) {
  const auto inst = read_instance(a.instance);
  const auto& sys = inst.system;
  const auto params = a.params.resolve(sys);
  const RandomTape tape(a.seed);
  const auto algo = parse_oracle_algo(a.algo);
  const auto kind = a.elements ? TargetKind::Element : TargetKind::Set;

  std::vector<std::uint32_t> targets = a.targets;
  const std::size_t universe = a.elements ? sys.num_elements() : sys.num_sets();
  if (targets.empty()) {
    for (std::uint32_t id = 0; id < universe; ++id) targets.push_back(id);
  }
  for (auto id : targets) {
    if (id >= universe) {
      err << "error: " << (a.elements ? "element" : "set") << " id " << id
          << " out of range (" << universe << ")\n";
      return kError;
    }
  }

  std::optional<RunResult> global;
  if (a.verify) {
    global = algo == OracleAlgo::Sqrt ? run_sqrt(sys, tape, params) : run_recsplit(sys, tape, params);
  }

  QueryProfile prof;
  prof.algo = to_string(algo);
  prof.n = sys.num_elements();
  prof.m = sys.num_sets();
  prof.s = sys.s();
  prof.t = sys.t();
  prof.seed = a.seed;
  const char* label = a.elements ? "element" : "set";

  out << "# sclca-lca v1\n";
  out << "target,id,answer,by,queries\n";
  for (auto id : targets) {
    OracleContext ctx(sys, tape, params, a.meter_cap);
    bool answer = false;
    std::optional<SetId> by;
    try {
      if (kind == TargetKind::Set) {
        answer = algo == OracleAlgo::Sqrt ? oracle_sqrt_set(ctx, id) : oracle_recsplit_set(ctx, id);
      } else {
        const auto ans =
            algo == OracleAlgo::Sqrt ? oracle_sqrt_element(ctx, id) : oracle_recsplit_element(ctx, id);
        answer = ans.covered;
        by = ans.by;
      }
    } catch (const BudgetExceeded& e) {
      out << std::flush;
      err << "error: query budget of " << e.cap() << " exceeded on " << label << ' ' << id << '\n';
      return kBudget;
    }
    const auto q = ctx.meter.count();
    out << label << ',' << id << ',' << (answer ? 1 : 0) << ',';
    if (by) out << *by;
    out << ',' << q << '\n';
    prof.per_call.push_back(q);

    if (global) {
      const auto& st = global->state;
      bool expected_answer = false;
      std::optional<SetId> expected_by;
      if (kind == TargetKind::Set) {
        expected_answer = st.is_chosen(id);
      } else {
        expected_answer = st.is_covered(id);
        expected_by = st.cover_assignment(id);
      }
      if (answer != expected_answer || by != expected_by) {
        out << std::flush;
        err << "mismatch: " << label << ' ' << id << " oracle=" << answer
            << " global=" << expected_answer << '\n';
        return kMismatch;
      }
    }
  }
  prof.calls = prof.per_call.size();
  for (auto q : prof.per_call) {
    prof.q_total += q;
    prof.q_max = std::max(prof.q_max, q);
  }
  prof.q_mean = prof.calls ? static_cast<double>(prof.q_total) / static_cast<double>(prof.calls) : 0.0;
  out << "# profile " << QueryProfile::csv_header() << '\n';
  out << "# profile " << prof.csv_row() << '\n';
  if (global) out << "# verified " << prof.calls << ' ' << label << " targets\n";
  return kOk;
}

struct VerifyArgs {
  std::string instance;
  std::uint64_t seed = 0;
  ParamFlags params;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto inst = read_instance(a.instance);
  const auto& sys = inst.system;
  const auto params = a.params.resolve(sys);
  const RandomTape tape(a.seed);
  int status = kOk;
  for (const auto& algo : kAlgos) {
    const auto r = run_algorithm(algo, sys, tape, params);
    const bool ok = is_valid_cover(sys, r.state);
    out << (ok ? "ok" : "FAIL") << " cover " << algo << " size=" << r.report.cover_size << '\n';
    if (!ok) status = kMismatch;
  }
  for (auto algo : {OracleAlgo::Sqrt, OracleAlgo::RecSplit}) {
    const auto g = algo == OracleAlgo::Sqrt ? run_sqrt(sys, tape, params) : run_recsplit(sys, tape, params);
    std::optional<std::string> first;
    for (SetId s = 0; s < sys.num_sets() && !first; ++s) {
      OracleContext ctx(sys, tape, params);
      const bool ans = algo == OracleAlgo::Sqrt ? oracle_sqrt_set(ctx, s) : oracle_recsplit_set(ctx, s);
      if (ans != g.state.is_chosen(s)) first = "set " + std::to_string(s);
    }
    for (ElementId e = 0; e < sys.num_elements() && !first; ++e) {
      OracleContext ctx(sys, tape, params);
      const auto ans =
          algo == OracleAlgo::Sqrt ? oracle_sqrt_element(ctx, e) : oracle_recsplit_element(ctx, e);
      if (ans.covered != g.state.is_covered(e) || ans.by != g.state.cover_assignment(e)) {
        first = "element " + std::to_string(e);
      }
    }
    if (first) {
      out << "FAIL oracle " << to_string(algo) << " first mismatch at " << *first << '\n';
      err << "mismatch: " << to_string(algo) << ' ' << *first << '\n';
      status = kMismatch;
    } else {
      out << "ok oracle " << to_string(algo) << '\n';
    }
  }
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set cover local computation toolkit", "sclca"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--n", gen.n, "Elements")->required();
  gen_cmd->add_option("--m", gen.m, "Sets (default max(ceil(n/s), (n+1)/2))");
  gen_cmd->add_option("--s", gen.s, "Max set size")->required();
  gen_cmd->add_option("--t", gen.t, "Max element degree")->required();
  gen_cmd->add_option("--kind", gen.kind, "uniform, planted or chain");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run a global algorithm and print its report");
  run_cmd->add_option("instance", run_args.instance)->required();
  run_cmd->add_option("--algo", run_args.algo)->check(CLI::IsMember(kAlgos));
  run_cmd->add_option("--seed", run_args.seed);
  add_param_flags(run_cmd, run_args.params);

  LcaArgs lca;
  auto* lca_cmd = app.add_subcommand("lca", "Answer oracle queries");
  lca_cmd->alias("oracle");
  lca_cmd->add_option("instance", lca.instance)->required();
  lca_cmd->add_option("--algo", lca.algo)->check(CLI::IsMember({"sqrt", "recsplit"}));
  lca_cmd->add_option("--seed", lca.seed);
  lca_cmd->add_option("--targets", lca.targets, "Target ids (default all)")->delimiter(',');
  lca_cmd->add_flag("--elements", lca.elements, "Targets are elements instead of sets");
  lca_cmd->add_option("--meter-cap", lca.meter_cap, "Per-call query budget");
  lca_cmd->add_flag("--verify", lca.verify, "Cross-check against the global run");
  add_param_flags(lca_cmd, lca.params);

  BenchConfig bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep a grid of instances and seeds");
  bench_cmd->add_option("--algo", bench.algos)->delimiter(',')->required();
  bench_cmd->add_option("--n", bench.n)->delimiter(',')->required();
  bench_cmd->add_option("--m", bench.m)->delimiter(',');
  bench_cmd->add_option("--s", bench.s)->delimiter(',')->required();
  bench_cmd->add_option("--t", bench.t)->delimiter(',')->required();
  bench_cmd->add_option("--kind", bench.kinds)->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per cell");
  bench_cmd->add_option("--seed", bench.first_seed, "First seed");
  bench_cmd->add_option("--meter-cap", bench.meter_cap);
  bench_cmd->add_option("--oracle-calls", bench.oracle_calls, "Set targets profiled per cell");
  bench_cmd->add_option("--out", bench.out, "Output path (default stdout)");
  add_param_flags(bench_cmd, bench.params);

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every algorithm and oracle on one instance");
  verify_cmd->add_option("instance", verify.instance)->required();
  verify_cmd->add_option("--seed", verify.seed);
  add_param_flags(verify_cmd, verify.params);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out, err);
    if (*run_cmd) return cmd_run(run_args, out, err);
    if (*lca_cmd) return cmd_lca(lca, out, err);
    if (*verify_cmd) return cmd_verify(verify, out, err);
    if (*bench_cmd) {
      if (bench.out.empty() || bench.out == "-") {
        run_bench(bench, out);
      } else {
        std::ofstream file(bench.out);
        if (!file) throw std::runtime_error("cannot open " + bench.out);
        const auto rows = run_bench(bench, file);
        out << rows << " rows written to " << bench.out << '\n';
      }
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace sclca::cli
