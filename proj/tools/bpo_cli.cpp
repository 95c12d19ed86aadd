// Command-line front end over the shared-library C API. Subcommands cover
// instance generation, trace ingestion, solving, solver comparison, and the
// scaling benchmark harness; see README.md for usage examples.
#include <bpo/bpo.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInfeasible = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

void check(int32_t rc, const std::string& what) {
  if (rc == BPO_OK) return;
  const int code = rc == BPO_ERROR_INFEASIBLE ? kExitInfeasible : kExitInvalidInput;
  fail(code, what + ": " + bpo_last_error());
}

std::string format_sig(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

struct InstanceHandle {
  bpo_instance* ptr = nullptr;
  ~InstanceHandle() { bpo_instance_free(ptr); }
};

struct GraphHandle {
  bpo_graph* ptr = nullptr;
  ~GraphHandle() { bpo_graph_free(ptr); }
};

struct TraceHandle {
  bpo_trace* ptr = nullptr;
  ~TraceHandle() { bpo_trace_free(ptr); }
};

struct ReportHandle {
  bpo_report* ptr = nullptr;
  ~ReportHandle() { bpo_report_free(ptr); }
};

struct MpHandle {
  bpo_mp_instance* ptr = nullptr;
  ~MpHandle() { bpo_mp_free(ptr); }
};

bpo_utility parse_utility(const std::string& text) {
  bpo_utility u;
  check(bpo_utility_parse(text.c_str(), &u), "utility");
  return u;
}

int32_t parse_step_rule(const std::string& text) {
  if (text == "harmonic") return BPO_STEP_HARMONIC;
  if (text == "gapc") return BPO_STEP_GAP_OVER_CURVATURE;
  if (text == "linesearch") return BPO_STEP_LINE_SEARCH;
  fail(kExitInvalidInput, "unknown step rule '" + text + "'");
}

int32_t parse_cost_scale(const std::string& text) {
  if (text == "unit") return BPO_COST_UNIT;
  if (text == "per-thousand") return BPO_COST_PER_THOUSAND;
  fail(kExitInvalidInput, "unknown cost scale '" + text + "'");
}

int32_t parse_solver(const std::string& text) {
  if (text == "fw") return BPO_SOLVER_FW;
  if (text == "ps") return BPO_SOLVER_PS;
  if (text == "md") return BPO_SOLVER_MD;
  if (text == "heuristic") return BPO_SOLVER_HEURISTIC;
  if (text == "bim") return BPO_SOLVER_BIM;
  fail(kExitInvalidInput, "unknown solver '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitInvalidInput, "cannot open for writing: " + path);
  out << content;
}

// shared solver flags
struct SolveOptions {
  std::string utility = "log:1000";
  int32_t max_iters = 30;
  double tol = 0.1;
  std::string step = "linesearch";
  double curvature = 0.0;
  int32_t baseline_iters = 200;
  int32_t mc_runs = 100;
  uint64_t seed = 0;

  bpo_solver_config config() const {
    bpo_solver_config cfg{};
    cfg.max_iters = max_iters;
    cfg.gap_tolerance = tol;
    cfg.step_rule = parse_step_rule(step);
    cfg.curvature = curvature;
    cfg.seed = seed;
    cfg.baseline_iterations = baseline_iters;
    cfg.mc_runs = mc_runs;
    return cfg;
  }
};

void add_solve_options(CLI::App* cmd, SolveOptions& opt) {
  cmd->add_option("--utility", opt.utility,
                  "linear:D | log:D | afair:A | maxmin[:A] (default log:1000)");
  cmd->add_option("--max-iters", opt.max_iters, "iteration cap (default 30)");
  cmd->add_option("--tol", opt.tol, "gap tolerance (default 0.1)");
  cmd->add_option("--step", opt.step, "harmonic | gapc | linesearch");
  cmd->add_option("--curvature", opt.curvature, "curvature constant for gapc (default: estimate)");
  cmd->add_option("--baseline-iters", opt.baseline_iters, "ps/md iterations (default 200)");
  cmd->add_option("--mc-runs", opt.mc_runs, "bim cascade samples (default 100)");
}

struct GenOptions {
  std::string model;
  int32_t n = 0;
  int32_t a = 4;
  double lambda = 1.0;
  double mu = 0.0;
  int32_t feed_size = 20;
  int32_t snapshots = 200;
  int64_t warmup = -1;
  double budget = -1.0;  // < 0: n/100
  std::string cost_scale = "unit";
  int32_t advertiser = 0;
  uint64_t seed = 0;
};

InstanceHandle generate_instance(const GenOptions& opt, GraphHandle* graph_out = nullptr) {
  GraphHandle graph;
  check(bpo_graph_gen(opt.model.c_str(), opt.n, opt.a, opt.seed, &graph.ptr), "gen");
  check(bpo_graph_set_uniform_rates(graph.ptr, opt.lambda, opt.mu), "gen");
  bpo_feed_config feed{};
  feed.feed_size = opt.feed_size;
  feed.warmup_events = opt.warmup;
  feed.snapshots = opt.snapshots;
  feed.events_between_snapshots = -1;
  feed.seed = opt.seed;
  InstanceHandle inst;
  check(bpo_graph_estimate_instance(graph.ptr, &feed, parse_cost_scale(opt.cost_scale),
                                    opt.budget, opt.advertiser, &inst.ptr),
        "gen");
  if (graph_out) std::swap(graph_out->ptr, graph.ptr);
  return inst;
}

struct CompareRow {
  std::string solver;
  double objective;
  double runtime_ms;
  int64_t iterations;
  double spend;
};

CompareRow run_one(const bpo_instance* inst, const bpo_utility& utility,
                   const bpo_solver_config& cfg, const std::string& solver_name,
                   ReportHandle* report_out = nullptr) {
  ReportHandle rep;
  check(bpo_solve(inst, &utility, &cfg, parse_solver(solver_name), &rep.ptr), solver_name);
  CompareRow row;
  row.solver = solver_name;
  check(bpo_report_objective(rep.ptr, &row.objective), solver_name);
  check(bpo_report_runtime_ms(rep.ptr, &row.runtime_ms), solver_name);
  check(bpo_report_iterations(rep.ptr, &row.iterations), solver_name);
  check(bpo_report_spend(rep.ptr, &row.spend), solver_name);
  if (report_out) std::swap(report_out->ptr, rep.ptr);
  return row;
}

int run(int argc, char** argv) {
  CLI::App app{"budgeted influencer-portfolio optimization"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  uint64_t seed = 0;
  int32_t threads = 1;
  bool no_timings = false;
  app.add_option("--seed", seed, "seed for all randomized steps")->configurable(false);
  app.add_option("--threads", threads, "worker threads for bench cells");
  app.add_flag("--no-timings", no_timings, "zero wall-clock fields in emitted files");

  // ---- gen ----
  GenOptions gen;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic instance");
  cmd_gen->add_option("--model", gen.model, "ab | er")->required();
  cmd_gen->add_option("--n", gen.n, "user count")->required();
  cmd_gen->add_option("--a", gen.a, "attachment edges / density parameter (default 4)");
  cmd_gen->add_option("--lambda", gen.lambda, "posting rate (default 1)");
  cmd_gen->add_option("--mu", gen.mu, "re-posting rate (default 0)");
  cmd_gen->add_option("--feed-size", gen.feed_size, "newsfeed size (default 20)");
  cmd_gen->add_option("--snapshots", gen.snapshots, "snapshot count (default 200)");
  cmd_gen->add_option("--warmup", gen.warmup, "warmup events (default 50*n)");
  cmd_gen->add_option("--budget", gen.budget, "campaign budget (default n/100)");
  cmd_gen->add_option("--cost-scale", gen.cost_scale, "unit | per-thousand (default unit)");
  cmd_gen->add_option("--advertiser", gen.advertiser, "advertiser user id (default 0)");
  cmd_gen->add_option("--out", gen_out, "output instance path")->required();

  // ---- ingest ----
  std::string ingest_trace, ingest_out, ingest_budget_rule, ingest_cost_scale = "unit";
  double ingest_window = 0.0;
  int64_t ingest_advertiser = -1;
  auto* cmd_ingest = app.add_subcommand("ingest", "build an instance from an activity trace");
  cmd_ingest->add_option("--trace", ingest_trace, "trace file path")->required();
  cmd_ingest->add_option("--window", ingest_window, "window length in trace time units")
      ->required();
  cmd_ingest->add_option("--cost-scale", ingest_cost_scale, "unit | per-thousand");
  cmd_ingest->add_option("--budget-rule", ingest_budget_rule, "fixed:<B> | per-user:<x>")
      ->required();
  cmd_ingest->add_option("--advertiser", ingest_advertiser,
                         "advertiser user id from the trace (default: first author)");
  cmd_ingest->add_option("--out", ingest_out, "output instance path")->required();

  // ---- solve ----
  SolveOptions solve_opt;
  std::string solve_instance, solve_out, solve_format = "json";
  auto* cmd_solve = app.add_subcommand("solve", "run the Frank-Wolfe solver");
  cmd_solve->add_option("instance", solve_instance, "instance file")->required();
  add_solve_options(cmd_solve, solve_opt);
  cmd_solve->add_option("--out", solve_out, "report path");
  cmd_solve->add_option("--format", solve_format, "json | csv (default json)");

  // ---- solve-mp ----
  SolveOptions mp_opt;
  std::string mp_instance, mp_out, mp_variant = "per-platform", mp_format = "json";
  auto* cmd_mp = app.add_subcommand("solve-mp", "solve a multi-platform instance");
  cmd_mp->add_option("instance", mp_instance, "multi-platform instance file")->required();
  cmd_mp->add_option("--variant", mp_variant, "per-platform | shared");
  add_solve_options(cmd_mp, mp_opt);
  cmd_mp->add_option("--out", mp_out, "report path");
  cmd_mp->add_option("--format", mp_format, "json | csv (default json)");

  // ---- heuristic ----
  SolveOptions heur_opt;
  std::string heur_instance, heur_out;
  auto* cmd_heur = app.add_subcommand("heuristic", "run the influence-per-cost greedy rule");
  cmd_heur->add_option("instance", heur_instance, "instance file")->required();
  cmd_heur->add_option("--utility", heur_opt.utility, "utility for evaluating the result");
  cmd_heur->add_option("--out", heur_out, "report path");

  // ---- compare ----
  SolveOptions cmp_opt;
  std::string cmp_instance, cmp_out, cmp_solvers = "fw,ps,md,bim,heuristic";
  auto* cmd_cmp = app.add_subcommand("compare", "run several solvers on one instance");
  cmd_cmp->add_option("instance", cmp_instance, "instance file")->required();
  add_solve_options(cmd_cmp, cmp_opt);
  cmd_cmp->add_option("--solvers", cmp_solvers, "comma list of fw,ps,md,bim,heuristic");
  cmd_cmp->add_option("--out", cmp_out, "output CSV path");

  // ---- bench ----
  SolveOptions bench_opt;
  bench_opt.max_iters = 20;
  std::string bench_model = "ab", bench_sizes = "250,500", bench_solvers = "fw,heuristic";
  std::string bench_out;
  int32_t bench_a = 4, bench_reps = 1, bench_feed = 20, bench_snapshots = 200;
  int64_t bench_warmup = -1;
  double bench_lambda = 1.0, bench_mu = 0.0, bench_budget_per_user = 0.01;
  double bench_delta = 1000.0, bench_eps = 0.0;
  auto* cmd_bench = app.add_subcommand("bench", "size sweep over generated instances");
  cmd_bench->add_option("--model", bench_model, "ab | er");
  cmd_bench->add_option("--sizes", bench_sizes, "comma list of user counts, ascending");
  cmd_bench->add_option("--a", bench_a, "graph density parameter (default 4)");
  cmd_bench->add_option("--lambda", bench_lambda, "posting rate (default 1)");
  cmd_bench->add_option("--mu", bench_mu, "re-posting rate (default 0)");
  cmd_bench->add_option("--feed-size", bench_feed, "newsfeed size (default 20)");
  cmd_bench->add_option("--snapshots", bench_snapshots, "snapshot count (default 200)");
  cmd_bench->add_option("--warmup", bench_warmup, "warmup events (default 50*n)");
  cmd_bench->add_option("--budget-per-user", bench_budget_per_user,
                        "budget = x * n (default 0.01)");
  cmd_bench->add_option("--solvers", bench_solvers, "comma list of solvers");
  cmd_bench->add_option("--reps", bench_reps, "seeds per size (default 1)");
  cmd_bench->add_option("--delta", bench_delta, "metric scale (default 1000)");
  cmd_bench->add_option("--eps", bench_eps, "reach threshold (default 0)");
  add_solve_options(cmd_bench, bench_opt);
  cmd_bench->add_option("--out", bench_out, "output CSV path")->required();

  // ---- validate ----
  std::string val_instance;
  auto* cmd_val = app.add_subcommand("validate", "check instance invariants");
  cmd_val->add_option("instance", val_instance, "instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInvalidInput;
  }

  if (*cmd_gen) {
    gen.seed = seed;
    InstanceHandle inst = generate_instance(gen);
    check(bpo_instance_save(inst.ptr, gen_out.c_str()), "gen");
    int32_t users = 0;
    bpo_instance_users(inst.ptr, &users);
    double budget = 0.0;
    bpo_instance_budget(inst.ptr, &budget);
    std::printf("wrote %s: %d users, budget %s\n", gen_out.c_str(), users,
                format_sig(budget).c_str());
    return kExitOk;
  }

  if (*cmd_ingest) {
    TraceHandle trace;
    check(bpo_trace_load(ingest_trace.c_str(), &trace.ptr), "ingest");
    int64_t records = 0, rejects = 0;
    bpo_trace_counts(trace.ptr, &records, &rejects);

    int32_t rule;
    double value;
    {
      const auto parts = split_list(ingest_budget_rule);
      const auto colon = ingest_budget_rule.find(':');
      if (parts.size() != 1 || colon == std::string::npos)
        fail(kExitInvalidInput, "budget rule must be fixed:<B> or per-user:<x>");
      const std::string kind = ingest_budget_rule.substr(0, colon);
      value = std::stod(ingest_budget_rule.substr(colon + 1));
      if (kind == "fixed")
        rule = BPO_BUDGET_FIXED;
      else if (kind == "per-user")
        rule = BPO_BUDGET_PER_USER;
      else
        fail(kExitInvalidInput, "budget rule must be fixed:<B> or per-user:<x>");
    }
    InstanceHandle inst;
    check(bpo_trace_build_instance(trace.ptr, ingest_window, parse_cost_scale(ingest_cost_scale),
                                   rule, value, ingest_advertiser, &inst.ptr),
          "ingest");
    check(bpo_instance_save(inst.ptr, ingest_out.c_str()), "ingest");
    int64_t dangling = 0;
    bpo_trace_dangling_retweets(trace.ptr, &dangling);
    int32_t users = 0;
    bpo_instance_users(inst.ptr, &users);
    std::printf("wrote %s: %" PRId64 " records (%" PRId64 " rejected), %d users, %" PRId64
                " dangling retweets\n",
                ingest_out.c_str(), records, rejects, users, dangling);
    return kExitOk;
  }

  auto emit_report = [&](bpo_report* rep, const std::string& path, const std::string& format) {
    if (path.empty()) return;
    if (format == "csv")
      check(bpo_report_write_csv(rep, path.c_str(), no_timings ? 0 : 1), "emit");
    else if (format == "json")
      check(bpo_report_write_json(rep, path.c_str(), no_timings ? 0 : 1), "emit");
    else
      fail(kExitInvalidInput, "unknown report format '" + format + "'");
  };

  auto print_summary = [&](bpo_report* rep) {
    double objective = 0.0, spend = 0.0;
    int64_t iterations = 0;
    const char* termination = nullptr;
    bpo_report_objective(rep, &objective);
    bpo_report_spend(rep, &spend);
    bpo_report_iterations(rep, &iterations);
    bpo_report_termination(rep, &termination);
    std::printf("objective %s  spend %s  iterates %" PRId64 "  termination %s\n",
                format_sig(objective).c_str(), format_sig(spend).c_str(), iterations, termination);
  };

  if (*cmd_solve) {
    solve_opt.seed = seed;
    InstanceHandle inst;
    check(bpo_instance_load(solve_instance.c_str(), &inst.ptr), "solve");
    const auto utility = parse_utility(solve_opt.utility);
    const auto cfg = solve_opt.config();
    ReportHandle rep;
    check(bpo_solve(inst.ptr, &utility, &cfg, BPO_SOLVER_FW, &rep.ptr), "solve");
    print_summary(rep.ptr);
    emit_report(rep.ptr, solve_out, solve_format);
    return kExitOk;
  }

  if (*cmd_mp) {
    mp_opt.seed = seed;
    MpHandle mp;
    check(bpo_mp_load(mp_instance.c_str(), &mp.ptr), "solve-mp");
    const auto utility = parse_utility(mp_opt.utility);
    const auto cfg = mp_opt.config();
    const int32_t variant = mp_variant == "shared" ? BPO_MP_SHARED : BPO_MP_PER_PLATFORM;
    if (mp_variant != "shared" && mp_variant != "per-platform")
      fail(kExitInvalidInput, "variant must be per-platform or shared");
    ReportHandle rep;
    check(bpo_mp_solve(mp.ptr, &utility, &cfg, variant, &rep.ptr), "solve-mp");
    print_summary(rep.ptr);
    int32_t platforms = 0;
    bpo_report_platforms(rep.ptr, &platforms);
    std::vector<double> spend(platforms), roi(platforms);
    bpo_report_platform_split(rep.ptr, spend.data(), roi.data(), platforms);
    for (int32_t l = 0; l < platforms; ++l)
      std::printf("platform %d: spend %s  roi %s\n", l, format_sig(spend[l]).c_str(),
                  format_sig(roi[l]).c_str());
    if (platforms == 2 && roi[0] != 0.0)
      std::printf("roi-ratio %s\n", format_sig(roi[1] / roi[0]).c_str());
    emit_report(rep.ptr, mp_out, mp_format);
    return kExitOk;
  }

  if (*cmd_heur) {
    heur_opt.seed = seed;
    InstanceHandle inst;
    check(bpo_instance_load(heur_instance.c_str(), &inst.ptr), "heuristic");
    const auto utility = parse_utility(heur_opt.utility);
    const auto cfg = heur_opt.config();
    ReportHandle rep;
    check(bpo_solve(inst.ptr, &utility, &cfg, BPO_SOLVER_HEURISTIC, &rep.ptr), "heuristic");
    print_summary(rep.ptr);
    emit_report(rep.ptr, heur_out, "json");
    return kExitOk;
  }

  if (*cmd_cmp) {
    cmp_opt.seed = seed;
    InstanceHandle inst;
    check(bpo_instance_load(cmp_instance.c_str(), &inst.ptr), "compare");
    const auto utility = parse_utility(cmp_opt.utility);
    const auto cfg = cmp_opt.config();
    std::string csv = "solver,objective,runtime_ms,iterations,spend\n";
    for (const auto& solver : split_list(cmp_solvers)) {
      const auto row = run_one(inst.ptr, utility, cfg, solver);
      csv += row.solver + "," + format_sig(row.objective) + "," +
             format_sig(no_timings ? 0.0 : row.runtime_ms) + "," +
             std::to_string(row.iterations) + "," + format_sig(row.spend) + "\n";
      std::printf("%-10s objective %s\n", row.solver.c_str(), format_sig(row.objective).c_str());
    }
    if (!cmp_out.empty()) write_file(cmp_out, csv);
    return kExitOk;
  }

  if (*cmd_bench) {
    bench_opt.seed = seed;
    const auto solver_names = split_list(bench_solvers);
    std::vector<int32_t> sizes;
    for (const auto& s : split_list(bench_sizes)) sizes.push_back(std::stoi(s));
    if (!std::is_sorted(sizes.begin(), sizes.end()))
      fail(kExitInvalidInput, "bench sizes must be ascending");
    if (bench_reps < 1) fail(kExitInvalidInput, "bench reps must be >= 1");
    const auto utility = parse_utility(bench_opt.utility);
    const auto cfg = bench_opt.config();

    struct Cell {
      int32_t size;
      int32_t rep;
      std::string rows;  // one row per solver, in order
    };
    std::vector<Cell> cells;
    for (int32_t n : sizes)
      for (int32_t r = 0; r < bench_reps; ++r) cells.push_back({n, r, {}});

    std::atomic<size_t> next{0};
    std::mutex failure_mutex;
    std::string failure;
    auto worker = [&]() {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure.empty()) return;
        }
        Cell& cell = cells[i];
        try {
        GenOptions g;
        g.model = bench_model;
        g.n = cell.size;
        g.a = bench_a;
        g.lambda = bench_lambda;
        g.mu = bench_mu;
        g.feed_size = bench_feed;
        g.snapshots = bench_snapshots;
        g.warmup = bench_warmup;
        g.budget = bench_budget_per_user * cell.size;
        g.seed = seed + static_cast<uint64_t>(cell.rep);
        GraphHandle graph;
        InstanceHandle inst = generate_instance(g, &graph);
        std::vector<int8_t> tiers(cell.size);
        check(bpo_graph_tiers(graph.ptr, tiers.data(), cell.size), "bench");
        int32_t dim = 0;
        bpo_instance_dimension(inst.ptr, &dim);
        for (const auto& solver : solver_names) {
          auto solver_cfg = cfg;
          solver_cfg.seed = g.seed;
          ReportHandle rep;
          const auto row = run_one(inst.ptr, utility, solver_cfg, solver, &rep);
          std::vector<double> a(dim);
          check(bpo_report_solution(rep.ptr, a.data(), dim), solver);
          bpo_metrics_result m{};
          check(bpo_instance_metrics(inst.ptr, a.data(), dim, bench_delta, bench_eps,
                                     tiers.data(), &m),
                solver);
          cell.rows += solver + "," + std::to_string(cell.size) + "," +
                       format_sig(row.objective) + "," +
                       format_sig(no_timings ? 0.0 : row.runtime_ms) + "," +
                       std::to_string(row.iterations) + "," + std::to_string(m.selected_nano) +
                       "," + std::to_string(m.selected_micro) + "," +
                       std::to_string(m.selected_macro) + "\n";
        }
        } catch (const CliError& e) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (failure.empty())
            failure = "cell (n=" + std::to_string(cell.size) + ", rep=" +
                      std::to_string(cell.rep) + "): " + e.message;
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (failure.empty())
            failure = "cell (n=" + std::to_string(cell.size) + ", rep=" +
                      std::to_string(cell.rep) + "): " + e.what();
        }
      }
    };

    const int32_t pool = std::max(1, std::min<int32_t>(threads, static_cast<int32_t>(cells.size())));
    std::vector<std::thread> workers;
    workers.reserve(pool);
    for (int32_t i = 0; i < pool; ++i) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    if (!failure.empty()) fail(kExitInvalidInput, failure);

    std::string csv = "solver,n,objective,runtime_ms,iterations,nano,micro,macro\n";
    for (const auto& cell : cells) csv += cell.rows;
    write_file(bench_out, csv);
    std::printf("wrote %s: %zu cells\n", bench_out.c_str(), cells.size());
    return kExitOk;
  }

  if (*cmd_val) {
    InstanceHandle inst;
    check(bpo_instance_load(val_instance.c_str(), &inst.ptr), "validate");
    char* text = nullptr;
    int32_t errors = 0, warnings = 0;
    check(bpo_instance_validate(inst.ptr, &text, &errors, &warnings), "validate");
    if (text && *text) {
      int printed = 0;
      const char* line = text;
      while (*line && printed < 25) {
        const char* end = std::strchr(line, '\n');
        if (!end) break;
        std::fwrite(line, 1, static_cast<size_t>(end - line + 1), stdout);
        line = end + 1;
        printed++;
      }
      if (*line) std::printf("... (more findings omitted)\n");
    }
    bpo_string_free(text);
    std::printf("%d errors, %d warnings\n", errors, warnings);
    return errors == 0 ? kExitOk : kExitInfeasible;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalidInput;
  }
}
