#include "kolab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "kolab/complexity.hpp"
#include "kolab/config.hpp"
#include "kolab/decompressor.hpp"
#include "kolab/error.hpp"
#include "kolab/gf2.hpp"
#include "kolab/machine.hpp"
#include "kolab/oracle.hpp"
#include "kolab/primes.hpp"
#include "kolab/reduction.hpp"
#include "kolab/report.hpp"

namespace kolab {

namespace {

struct CommonOptions {
  std::optional<std::string> config_path;
  std::vector<std::string> sets;
  std::optional<std::string> json_path;
  std::optional<unsigned> threads;
  std::optional<std::string> cache_dir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--config", c.config_path, "key=value configuration file");
  sub->add_option("--set", c.sets, "override a config key (key=value), repeatable");
  sub->add_option("--json", c.json_path, "write the JSON report to this path");
  sub->add_option("--threads", c.threads, "worker thread cap");
  sub->add_option("--cache-dir", c.cache_dir, "complexity table cache directory");
  sub->add_option("--seed", c.seed, "64-bit seed");
}

// Precedence: defaults < config file < KOLAB_CACHE_DIR < --set < flags.
RunConfig resolve(const CommonOptions& c) {
  RunConfig cfg = c.config_path ? RunConfig::load(*c.config_path) : RunConfig{};
  if (const char* env = std::getenv("KOLAB_CACHE_DIR"); env && *env) cfg.cache_dir = env;
  for (const auto& s : c.sets) cfg.assign(s);
  if (c.threads) cfg.threads = *c.threads;
  if (c.cache_dir) cfg.cache_dir = *c.cache_dir;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void write_json(const Json& report, const std::optional<std::string>& path, std::ostream& out, bool echo) {
  if (path) {
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + *path);
    f << dump_report(report);
  } else if (echo) {
    out << dump_report(report);
  }
}

std::string fmt_fraction(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

int cmd_halting(const CommonOptions& c, const std::string& x_arg, std::optional<std::uint64_t> budget,
                std::ostream& out) {
  RunConfig cfg = resolve(c);
  if (budget) cfg.params.budgets.halt_budget = *budget;
  cfg.validate();
  Stopwatch sw;
  const BitStr x = parse_bits_arg(x_arg);
  const auto outcome = run_halting(x, cfg.params.budgets);
  out << (outcome.halted() ? "true" : "false") << " steps=" << outcome.steps << " outcome=" << to_string(outcome.kind)
      << "\n";
  Json report = report_envelope("halting", cfg);
  report["x"] = to_hex(x);
  report["verdict"] = outcome.halted();
  report["outcome"] = std::string(to_string(outcome.kind));
  report["costs"] = {{"steps", outcome.steps}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return 0;
}

int cmd_complexity(const CommonOptions& c, const std::string& machine_arg, const std::string& x_arg,
                   std::optional<std::uint64_t> cond_nat, std::optional<unsigned> bound, bool no_cache,
                   std::ostream& out) {
  RunConfig cfg = resolve(c);
  cfg.validate();
  Stopwatch sw;
  const MachineId id = parse_machine(machine_arg);
  const BitStr x = parse_bits_arg(x_arg);
  if (cond_nat && !takes_condition(id)) throw Error("--cond applies to vopt and v only");
  const BitStr cond = cond_nat ? encode_nat(*cond_nat) : BitStr{};
  const unsigned b = bound.value_or(static_cast<unsigned>(cfg.params.enum_bound));
  const auto table = no_cache ? build_table(id, cond, b, cfg.params, cfg.threads)
                              : cached_table(cfg.cache_dir, id, cond, b, cfg.params, cfg.threads);
  const auto value = table.complexity_of(x);
  out << "C_" << machine_name(id) << "(" << x.str();
  if (cond_nat) out << " | " << *cond_nat;
  out << ") = " << (value ? std::to_string(*value) : "> " + std::to_string(b)) << "\n";
  Json report = report_envelope("complexity", cfg);
  report["machine"] = std::string(machine_name(id));
  report["x"] = to_hex(x);
  report["cond"] = takes_condition(id) ? Json(to_hex(cond)) : Json(nullptr);
  report["bound"] = b;
  report["values"] = {{"complexity", value ? Json(*value) : Json(nullptr)}, {"above_bound", !value.has_value()}};
  report["costs"] = {{"executions", table.runs_below(b + 1)}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return 0;
}

int cmd_oracle(const CommonOptions& c, const std::string& q_arg, std::optional<std::string> mode,
               std::ostream& out) {
  RunConfig cfg = resolve(c);
  if (mode) cfg.mode = parse_oracle_mode(*mode);
  cfg.validate();
  Stopwatch sw;
  const BitStr q = parse_bits_arg(q_arg);
  RandomnessOracle oracle(cfg.params, cfg.threads);
  const auto v = oracle.query(q, cfg.mode);
  out << (v.random ? "random" : "non-random") << " mode=" << to_string(v.mode)
      << " witness=" << (v.witness ? to_hex(*v.witness) : "-") << " cost=" << v.cost << "\n";
  Json report = report_envelope("oracle", cfg);
  report["verdict"] = to_json(v);
  report["costs"] = {{"executions", v.cost}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return 0;
}

int cmd_reduce(const CommonOptions& c, const std::string& x_arg, std::optional<std::uint64_t> m,
               std::optional<std::string> mode, std::optional<std::string> k_filter, std::ostream& out) {
  RunConfig cfg = resolve(c);
  if (m) cfg.m = *m;
  if (mode) cfg.mode = parse_oracle_mode(*mode);
  if (k_filter) cfg.k_filter = parse_k_filter(*k_filter);
  cfg.validate();
  Stopwatch sw;
  const BitStr x = parse_bits_arg(x_arg);
  RandomnessOracle oracle(cfg.params, cfg.threads);
  const auto r = decide_halting(x, cfg.reduction(), oracle);
  out << "x=" << x.str() << " l=" << r.l << " p_l=" << r.p_l << " n=" << r.n
      << " verdict=" << (r.halts ? "HALTS" : "LOOPS");
  if (r.firing_k) {
    for (const auto& s : r.per_k) {
      if (s.k == *r.firing_k) out << " firing_k=" << s.k << " fraction=" << fmt_fraction(s.fraction());
    }
  }
  out << " ground_truth=" << (r.ground_truth ? "HALTS" : "LOOPS") << "\n";
  Json report = report_envelope("reduce", cfg);
  Json body = to_json(r);
  for (auto& [key, value] : body.items()) report[key] = value;
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return 0;
}

int cmd_calibrate(const CommonOptions& c, std::uint64_t max_len, std::optional<std::uint64_t> pad,
                  std::optional<std::uint64_t> slack, std::optional<std::uint64_t> bound, std::ostream& out) {
  RunConfig cfg = resolve(c);
  if (pad) cfg.params.pad = *pad;
  if (slack) cfg.params.slack = *slack;
  if (bound) cfg.params.enum_bound = *bound;
  cfg.validate();
  Stopwatch sw;
  const auto cal = calibrate_g(cfg.params, max_len);
  Json report = report_envelope("calibrate", cfg);
  report["max_len"] = max_len;
  report["D"] = cfg.params.D;
  report["G_configured"] = cfg.params.G;
  report["values"] = to_json(cal);
  report["G_configured_valid"] = cfg.params.G >= cal.g_star;
  report["costs"] = {{"strings_checked", cal.checked}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, true);
  return 0;
}

int cmd_spurious(const CommonOptions& c, std::optional<std::string> x_arg, std::uint64_t l, std::uint64_t k,
                 std::uint64_t trials, std::ostream& out) {
  RunConfig cfg = resolve(c);
  cfg.validate();
  Stopwatch sw;
  RandomnessOracle oracle(cfg.params, cfg.threads);
  const auto est = x_arg ? spurious_rate_experiment(parse_bits_arg(*x_arg), k, trials, cfg.seed, oracle, cfg.mode)
                         : spurious_rate_experiment(l, k, trials, cfg.seed, oracle, cfg.mode);
  out << "x=" << est.x.str() << " k=" << est.k << " fired=" << est.fired << "/" << est.trials
      << " frequency=" << est.frequency << " ci95=[" << est.ci_low << ", " << est.ci_high << "] bound=" << est.bound
      << (est.within_bound ? " PASS" : " FAIL") << "\n";
  Json report = report_envelope("experiment spurious", cfg);
  report["values"] = to_json(est);
  report["costs"] = {{"oracle_queries", 2 * est.trials}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return est.within_bound ? 0 : 1;
}

int cmd_collision(const CommonOptions& c, std::uint64_t n, std::uint64_t k, std::optional<std::string> b1_arg,
                  std::optional<std::string> b2_arg, std::ostream& out) {
  RunConfig cfg = resolve(c);
  Stopwatch sw;
  Json rows = Json::array();
  bool exact = true;
  std::uint64_t pairs = 0;
  auto record = [&](const BitStr& b1, const BitStr& b2) {
    const auto r = collision_census(n, k, b1, b2);
    const bool ok = r.count * (std::uint64_t{1} << k) == r.total;
    exact = exact && ok;
    ++pairs;
    rows.push_back({{"b1", to_hex(b1)}, {"b2", to_hex(b2)}, {"count", r.count}, {"total", r.total}, {"exact", ok}});
  };
  if (b1_arg || b2_arg) {
    if (!b1_arg || !b2_arg) throw Error("--b1 and --b2 go together");
    record(parse_bits_arg(*b1_arg), parse_bits_arg(*b2_arg));
  } else {
    if (n * k > 16) throw Error("census is exhaustive only for n*k <= 16");
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      for (std::uint64_t j = i + 1; j < (std::uint64_t{1} << n); ++j) {
        record(BitStr::from_uint(i, n), BitStr::from_uint(j, n));
      }
    }
  }
  out << "n=" << n << " k=" << k << " pairs=" << pairs << " probability 2^-" << k
      << (exact ? " exact for every pair" : " VIOLATED") << "\n";
  Json report = report_envelope("experiment collision", cfg);
  report["n"] = n;
  report["k"] = k;
  report["values"] = {{"pairs", std::move(rows)}, {"all_exact", exact}};
  report["costs"] = {{"matrices_per_pair", std::uint64_t{1} << (n * k)}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return exact ? 0 : 1;
}

int cmd_endtoend(const CommonOptions& c, std::uint64_t l, std::optional<std::uint64_t> m, std::ostream& out) {
  RunConfig cfg = resolve(c);
  if (m) cfg.m = *m;
  cfg.validate();
  if (l == 0 || l > 12) throw Error("end-to-end sweep supports 1 <= l <= 12");
  Stopwatch sw;
  RandomnessOracle oracle(cfg.params, cfg.threads);
  Json rows = Json::array();
  std::uint64_t correct = 0, halting = 0, queries = 0, executions = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << l); ++code) {
    const auto r = decide_halting(BitStr::from_uint(code, l), cfg.reduction(), oracle);
    correct += r.halts == r.ground_truth;
    halting += r.ground_truth;
    queries += r.oracle_queries;
    executions += r.logical_executions;
    double fraction = 0.0;
    for (const auto& s : r.per_k) {
      if (r.firing_k && s.k == *r.firing_k) fraction = s.fraction();
    }
    rows.push_back({{"x", to_hex(r.x)},
                    {"verdict", r.halts ? "HALTS" : "LOOPS"},
                    {"ground_truth", r.ground_truth ? "HALTS" : "LOOPS"},
                    {"firing_k", r.firing_k ? Json(*r.firing_k) : Json(nullptr)},
                    {"firing_fraction", fraction}});
  }
  const std::uint64_t total = std::uint64_t{1} << l;
  out << "l=" << l << " programs=" << total << " halting=" << halting << " correct=" << correct << "/" << total << "\n";
  Json report = report_envelope("experiment endtoend", cfg);
  report["l"] = l;
  report["values"] = {{"programs", std::move(rows)},
                      {"correct", correct},
                      {"total", total},
                      {"halting", halting},
                      {"accuracy", static_cast<double>(correct) / static_cast<double>(total)}};
  const double spurious = std::ldexp(1.0, 1 - static_cast<int>(cfg.params.slack));
  report["hoeffding_bound_negative_side"] =
      spurious < cfg.threshold ? Json(hoeffding_bound(cfg.m, spurious, cfg.threshold)) : Json(nullptr);
  report["costs"] = {{"oracle_queries", queries}, {"logical_executions", executions}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return correct == total ? 0 : 1;
}

int cmd_crossval(const CommonOptions& c, std::size_t exhaustive_max, std::size_t lo, std::size_t hi,
                 std::uint64_t samples, std::ostream& out) {
  RunConfig cfg = resolve(c);
  cfg.validate();
  Stopwatch sw;
  RandomnessOracle oracle(cfg.params, cfg.threads);
  const auto cv = cross_validate(oracle, exhaustive_max, lo, hi, samples, cfg.seed);
  out << "checked=" << cv.checked << " agreed=" << cv.agreed << " agreement=" << cv.agreement() << "\n";
  Json report = report_envelope("experiment crossval", cfg);
  report["values"] = to_json(cv);
  report["costs"] = {{"oracle_queries", oracle.query_count()}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return cv.agreed == cv.checked ? 0 : 1;
}

int cmd_pairs(const CommonOptions& c, std::uint64_t p, std::uint64_t k, std::ostream& out) {
  RunConfig cfg = resolve(c);
  cfg.validate();
  Stopwatch sw;
  const auto r = check_pair_lemma(cfg.params, p, k, cfg.threads);
  out << "p=" << p << " k=" << k << " strings=" << r.strings << " hypothesis=" << r.hypothesis
      << " counterexamples=" << r.counterexamples << "\n";
  Json report = report_envelope("experiment pairs", cfg);
  report["values"] = to_json(r);
  report["costs"] = {{"strings", r.strings}};
  report["wall_time"] = sw.seconds();
  write_json(report, c.json_path, out, false);
  return r.counterexamples == 0 ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-string oracle laboratory: decompressors, complexity tables and the halting reduction",
               "kolab"};
  app.require_subcommand(1);
  CommonOptions common;

  auto* halting = app.add_subcommand("halting", "run x as a program within the halting budget");
  std::string x_arg;
  std::optional<std::uint64_t> budget;
  halting->add_option("--x", x_arg, "program bits (0/1 or HEX:LEN)")->required();
  halting->add_option("--budget", budget, "halting step budget");
  add_common(halting, common);

  auto* complexity = app.add_subcommand("complexity", "exact complexity from a forward table");
  std::string machine_arg;
  std::optional<std::uint64_t> cond_nat;
  std::optional<unsigned> bound;
  bool no_cache = false;
  complexity->add_option("--machine", machine_arg, "vopt, v, u or w")->required();
  complexity->add_option("--x", x_arg, "string (0/1 or HEX:LEN)")->required();
  complexity->add_option("--cond", cond_nat, "numeric condition, passed as its binary encoding");
  complexity->add_option("--bound", bound, "description length bound");
  complexity->add_flag("--no-cache", no_cache, "skip the table cache");
  add_common(complexity, common);

  auto* oracle = app.add_subcommand("oracle", "membership of q in R_U");
  std::string q_arg;
  std::optional<std::string> mode;
  oracle->add_option("--q", q_arg, "query (0/1 or HEX:LEN)")->required();
  oracle->add_option("--mode", mode, "exact or structural");
  add_common(oracle, common);

  auto* reduce = app.add_subcommand("reduce", "decide x in H_T with R_U queries only");
  std::optional<std::uint64_t> m;
  std::optional<std::string> k_filter;
  reduce->add_option("--x", x_arg, "program bits (0/1 or HEX:LEN)")->required();
  reduce->add_option("--m", m, "matrices per k");
  reduce->add_option("--mode", mode, "exact or structural");
  reduce->add_option("--k-filter", k_filter, "all or odd_only");
  add_common(reduce, common);

  auto* calibrate = app.add_subcommand("calibrate", "smallest G for which the padding implication holds");
  std::uint64_t max_len = 0;
  std::optional<std::uint64_t> pad, slack, enum_bound;
  calibrate->add_option("--max-len", max_len, "longest x checked")->required();
  calibrate->add_option("--pad", pad, "pad length");
  calibrate->add_option("--slack", slack, "slack");
  calibrate->add_option("--bound", enum_bound, "enumeration bound");
  add_common(calibrate, common);

  auto* experiment = app.add_subcommand("experiment", "statistical and exhaustive experiments");
  experiment->require_subcommand(1);

  auto* spurious = experiment->add_subcommand("spurious", "per-matrix event frequency for a non-halting x");
  std::optional<std::string> x_opt;
  std::uint64_t l = 7, k = 15, trials = 2000;
  spurious->add_option("--x", x_opt, "non-halting program (default: first one of length l)");
  spurious->add_option("--l", l, "program length");
  spurious->add_option("--k", k, "matrix rows");
  spurious->add_option("--trials", trials, "matrices sampled");
  add_common(spurious, common);

  auto* collision = experiment->add_subcommand("collision", "exhaustive collision census of A b1 = A b2");
  std::uint64_t cn = 3, ck = 2;
  std::optional<std::string> b1, b2;
  collision->add_option("--n", cn, "columns");
  collision->add_option("--k", ck, "rows");
  collision->add_option("--b1", b1, "first vector (default: every pair)");
  collision->add_option("--b2", b2, "second vector");
  add_common(collision, common);

  auto* endtoend = experiment->add_subcommand("endtoend", "run the reduction on every program of length l");
  std::uint64_t el = 7;
  endtoend->add_option("--l", el, "program length");
  endtoend->add_option("--m", m, "matrices per k");
  add_common(endtoend, common);

  auto* crossval = experiment->add_subcommand("crossval", "agreement of exact and structural oracle modes");
  std::size_t ex_max = 15, lo = 16, hi = 18;
  std::uint64_t samples = 200;
  crossval->add_option("--exhaustive-max", ex_max, "all q up to this length");
  crossval->add_option("--sample-lo", lo, "first sampled length");
  crossval->add_option("--sample-hi", hi, "last sampled length");
  crossval->add_option("--samples", samples, "samples per sampled length");
  add_common(crossval, common);

  auto* pairs = experiment->add_subcommand("pairs", "exhaustive check of the random/non-random pair lemma");
  std::uint64_t rp = 5, rk = 3;
  pairs->add_option("--p", rp, "large prime divider");
  pairs->add_option("--k", rk, "cofactor");
  add_common(pairs, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*halting) return cmd_halting(common, x_arg, budget, out);
    if (*complexity) return cmd_complexity(common, machine_arg, x_arg, cond_nat, bound, no_cache, out);
    if (*oracle) return cmd_oracle(common, q_arg, mode, out);
    if (*reduce) return cmd_reduce(common, x_arg, m, mode, k_filter, out);
    if (*calibrate) return cmd_calibrate(common, max_len, pad, slack, enum_bound, out);
    if (*spurious) return cmd_spurious(common, x_opt, l, k, trials, out);
    if (*collision) return cmd_collision(common, cn, ck, b1, b2, out);
    if (*endtoend) return cmd_endtoend(common, el, m, out);
    if (*crossval) return cmd_crossval(common, ex_max, lo, hi, samples, out);
    if (*pairs) return cmd_pairs(common, rp, rk, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace kolab
