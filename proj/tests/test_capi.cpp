#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bpo/bpo.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

const char* kSmallInstance =
    "bpo-instance v1\n"
    "N 4\n"
    "advertiser 0\n"
    "budget 1.5\n"
    "user 0 1 0 1\n"
    "user 1 1 1 1\n"
    "user 2 1 1 1\n"
    "user 3 1 1 1\n"
    "imp 0 1 0.2\n"
    "imp 1 2 0.5\n"
    "imp 2 3 0.4\n"
    "imp 3 1 0.3\n";

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "bpo_capi_test";
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("version and error state") {
  CHECK(bpo_version() != nullptr);
  CHECK(bpo_last_error() != nullptr);
}

TEST_CASE("null arguments are rejected with a message") {
  CHECK(bpo_instance_load(nullptr, nullptr) == BPO_ERROR_NULL_POINTER);
  CHECK(std::strlen(bpo_last_error()) > 0);
  bpo_instance* inst = nullptr;
  CHECK(bpo_instance_users(inst, nullptr) == BPO_ERROR_NULL_POINTER);
}

TEST_CASE("missing files surface as io errors") {
  bpo_instance* inst = nullptr;
  CHECK(bpo_instance_load("/nonexistent/path.bpo", &inst) == BPO_ERROR_IO);
}

TEST_CASE("instance accessors and save/load round trip") {
  TempDir tmp;
  bpo_instance* inst = nullptr;
  REQUIRE(bpo_instance_loads(kSmallInstance, &inst) == BPO_OK);
  int32_t users = 0, dim = 0, advertiser = -1;
  double budget = 0.0;
  CHECK(bpo_instance_users(inst, &users) == BPO_OK);
  CHECK(bpo_instance_dimension(inst, &dim) == BPO_OK);
  CHECK(bpo_instance_advertiser(inst, &advertiser) == BPO_OK);
  CHECK(bpo_instance_budget(inst, &budget) == BPO_OK);
  CHECK(users == 4);
  CHECK(dim == 3);
  CHECK(advertiser == 0);
  CHECK(budget == 1.5);

  const auto path = tmp.file("round.bpo");
  REQUIRE(bpo_instance_save(inst, path.c_str()) == BPO_OK);
  bpo_instance* back = nullptr;
  REQUIRE(bpo_instance_load(path.c_str(), &back) == BPO_OK);
  int32_t users2 = 0;
  bpo_instance_users(back, &users2);
  CHECK(users2 == users);
  bpo_instance_free(back);
  bpo_instance_free(inst);
}

TEST_CASE("validation reports errors and warnings") {
  bpo_instance* inst = nullptr;
  REQUIRE(bpo_instance_loads(kSmallInstance, &inst) == BPO_OK);
  char* text = nullptr;
  int32_t errors = -1, warnings = -1;
  CHECK(bpo_instance_validate(inst, &text, &errors, &warnings) == BPO_OK);
  CHECK(errors == 0);
  CHECK(warnings > 0);  // sub-stochastic columns
  CHECK(text != nullptr);
  bpo_string_free(text);
  bpo_instance_free(inst);

  const char* bad =
      "bpo-instance v1\nN 2\nadvertiser 0\nbudget 1\nuser 0 1 1 1\nuser 1 1 1 1\nimp 0 1 1.5\n";
  REQUIRE(bpo_instance_loads(bad, &inst) == BPO_OK);
  CHECK(bpo_instance_validate(inst, nullptr, &errors, &warnings) == BPO_OK);
  CHECK(errors > 0);
  bpo_instance_free(inst);
}

TEST_CASE("spend and metrics") {
  bpo_instance* inst = nullptr;
  REQUIRE(bpo_instance_loads(kSmallInstance, &inst) == BPO_OK);
  const double a[3] = {1.0, 0.5, 0.0};
  double spend = 0.0;
  CHECK(bpo_instance_spend(inst, a, 3, &spend) == BPO_OK);
  CHECK(spend == doctest::Approx(1.5));
  bpo_metrics_result m{};
  CHECK(bpo_instance_metrics(inst, a, 3, 10.0, 0.0, nullptr, &m) == BPO_OK);
  CHECK(m.total_reach == 3);  // viewers 1, 2, 3 all see something
  CHECK(m.selected == 2);
  CHECK(m.has_tiers == 0);
  const int8_t tiers[4] = {BPO_TIER_NON_INFLUENCER, BPO_TIER_NANO, BPO_TIER_MICRO,
                           BPO_TIER_MACRO};
  CHECK(bpo_instance_metrics(inst, a, 3, 10.0, 0.0, tiers, &m) == BPO_OK);
  CHECK(m.selected_nano == 1);
  CHECK(m.selected_micro == 1);
  CHECK(m.selected_macro == 0);
  bpo_instance_free(inst);
}

TEST_CASE("graph generation, rates, tiers and estimation") {
  bpo_graph* g = nullptr;
  REQUIRE(bpo_graph_gen("ab", 60, 3, 7, &g) == BPO_OK);
  int32_t nodes = 0;
  int64_t edges = 0;
  CHECK(bpo_graph_nodes(g, &nodes) == BPO_OK);
  CHECK(bpo_graph_edges(g, &edges) == BPO_OK);
  CHECK(nodes == 60);
  CHECK(edges == 2 * (3 * 57 + 3));
  CHECK(bpo_graph_set_uniform_rates(g, 1.0, 0.0) == BPO_OK);

  std::vector<int64_t> counts(nodes);
  CHECK(bpo_graph_follower_counts(g, counts.data(), nodes) == BPO_OK);
  std::vector<int8_t> tiers(nodes);
  CHECK(bpo_graph_tiers(g, tiers.data(), nodes) == BPO_OK);
  bool any_macro = false;
  for (int8_t t : tiers) any_macro = any_macro || t == BPO_TIER_MACRO;
  CHECK(any_macro);

  bpo_feed_config feed{};
  feed.feed_size = 20;
  feed.warmup_events = -1;
  feed.snapshots = 50;
  feed.events_between_snapshots = -1;
  feed.seed = 7;
  bpo_instance* inst = nullptr;
  REQUIRE(bpo_graph_estimate_instance(g, &feed, BPO_COST_UNIT, -1.0, 0, &inst) == BPO_OK);
  double budget = 0.0;
  bpo_instance_budget(inst, &budget);
  CHECK(budget == doctest::Approx(0.6));  // nodes / 100
  int32_t errors = -1, warnings = -1;
  CHECK(bpo_instance_validate(inst, nullptr, &errors, &warnings) == BPO_OK);
  CHECK(errors == 0);
  bpo_instance_free(inst);
  bpo_graph_free(g);

  CHECK(bpo_graph_gen("nope", 10, 2, 0, &g) == BPO_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("trace ingestion through the c api") {
  TempDir tmp;
  const auto path = tmp.file("trace.txt");
  {
    std::ofstream out(path);
    out << "1 0 100 -1\n2 10 200 1\n3 20 100 -1\n4 30 300 2\nbroken line\n5 40 100 99\n";
  }
  bpo_trace* trace = nullptr;
  REQUIRE(bpo_trace_load(path.c_str(), &trace) == BPO_OK);
  int64_t records = 0, rejects = 0;
  CHECK(bpo_trace_counts(trace, &records, &rejects) == BPO_OK);
  CHECK(records == 5);
  CHECK(rejects == 1);
  int64_t dangling = 0;
  CHECK(bpo_trace_dangling_retweets(trace, &dangling) == BPO_OK);
  CHECK(dangling == 1);

  bpo_instance* inst = nullptr;
  REQUIRE(bpo_trace_build_instance(trace, 100.0, BPO_COST_UNIT, BPO_BUDGET_PER_USER, 0.5, -1,
                                   &inst) == BPO_OK);
  int32_t users = 0;
  bpo_instance_users(inst, &users);
  CHECK(users == 3);
  double budget = 0.0;
  bpo_instance_budget(inst, &budget);
  CHECK(budget == doctest::Approx(1.5));
  int32_t advertiser = -1;
  bpo_instance_advertiser(inst, &advertiser);
  CHECK(advertiser == 0);  // first author
  bpo_instance_free(inst);

  // named advertiser and tier query
  REQUIRE(bpo_trace_build_instance(trace, 100.0, BPO_COST_UNIT, BPO_BUDGET_FIXED, 2.0, 200,
                                   &inst) == BPO_OK);
  bpo_instance_advertiser(inst, &advertiser);
  CHECK(advertiser == 1);
  std::vector<int8_t> tiers(users);
  CHECK(bpo_trace_tiers(trace, 100.0, tiers.data(), users) == BPO_OK);
  CHECK(tiers[0] == BPO_TIER_NANO);  // user 100 has followers and posts
  bpo_instance_free(inst);
  CHECK(bpo_trace_build_instance(trace, 100.0, BPO_COST_UNIT, BPO_BUDGET_FIXED, 2.0, 555, &inst) ==
        BPO_ERROR_INVALID_ARGUMENT);
  bpo_trace_free(trace);
}

TEST_CASE("utility strings parse to specs") {
  bpo_utility u{};
  CHECK(bpo_utility_parse("linear:5", &u) == BPO_OK);
  CHECK(u.kind == BPO_UTILITY_LINEAR);
  CHECK(u.delta == 5.0);
  CHECK(bpo_utility_parse("log:1000", &u) == BPO_OK);
  CHECK(u.kind == BPO_UTILITY_LOG);
  CHECK(bpo_utility_parse("afair:2.5", &u) == BPO_OK);
  CHECK(u.alpha == 2.5);
  CHECK(bpo_utility_parse("maxmin", &u) == BPO_OK);
  CHECK(u.kind == BPO_UTILITY_ALPHA_FAIR);
  CHECK(u.alpha == 8.0);
  CHECK(bpo_utility_parse("maxmin:12", &u) == BPO_OK);
  CHECK(u.alpha == 12.0);
  CHECK(bpo_utility_parse("reach:0.1", &u) == BPO_OK);
  CHECK(u.epsilon == 0.1);
  CHECK(bpo_utility_parse("wat:1", &u) == BPO_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("solving and report access through the c api") {
  TempDir tmp;
  bpo_instance* inst = nullptr;
  REQUIRE(bpo_instance_loads(kSmallInstance, &inst) == BPO_OK);
  bpo_utility utility{};
  REQUIRE(bpo_utility_parse("log:10", &utility) == BPO_OK);
  bpo_solver_config cfg{};
  cfg.max_iters = 20000;
  cfg.gap_tolerance = 5e-3;  // the gap shrinks as O(1/t)
  cfg.step_rule = BPO_STEP_LINE_SEARCH;

  bpo_report* rep = nullptr;
  REQUIRE(bpo_solve(inst, &utility, &cfg, BPO_SOLVER_FW, &rep) == BPO_OK);
  int32_t dim = 0;
  CHECK(bpo_report_dimension(rep, &dim) == BPO_OK);
  REQUIRE(dim == 3);
  std::vector<double> a(dim);
  CHECK(bpo_report_solution(rep, a.data(), dim) == BPO_OK);
  CHECK(bpo_report_solution(rep, a.data(), 2) == BPO_ERROR_INVALID_ARGUMENT);
  double objective = 0.0, spend = 0.0, budget_excess = 0.0, box_excess = 0.0;
  CHECK(bpo_report_objective(rep, &objective) == BPO_OK);
  CHECK(objective > 0.0);
  CHECK(bpo_report_spend(rep, &spend) == BPO_OK);
  CHECK(spend <= 1.5 + 1e-9);
  CHECK(bpo_report_residuals(rep, &budget_excess, &box_excess) == BPO_OK);
  CHECK(budget_excess <= 1e-9);
  const char* termination = nullptr;
  CHECK(bpo_report_termination(rep, &termination) == BPO_OK);
  CHECK(std::string(termination) == "gap_below_tol");
  int64_t iterations = 0;
  CHECK(bpo_report_iterations(rep, &iterations) == BPO_OK);
  std::vector<double> obj_trace(iterations), gap_trace(iterations);
  CHECK(bpo_report_trace(rep, obj_trace.data(), gap_trace.data(),
                         static_cast<int32_t>(iterations)) == BPO_OK);
  CHECK(gap_trace.back() < 5e-3);
  int32_t platforms = -1;
  CHECK(bpo_report_platforms(rep, &platforms) == BPO_OK);
  CHECK(platforms == 0);

  const auto json_path = tmp.file("rep.json");
  const auto csv_path = tmp.file("rep.csv");
  CHECK(bpo_report_write_json(rep, json_path.c_str(), 0) == BPO_OK);
  CHECK(bpo_report_write_csv(rep, csv_path.c_str(), 0) == BPO_OK);
  CHECK(std::filesystem::file_size(json_path) > 0);
  bpo_report_free(rep);

  // every other solver id works on the same instance
  for (int32_t solver : {BPO_SOLVER_PS, BPO_SOLVER_MD, BPO_SOLVER_HEURISTIC, BPO_SOLVER_BIM}) {
    bpo_solver_config c{};
    c.baseline_iterations = 30;
    c.mc_runs = 20;
    REQUIRE(bpo_solve(inst, &utility, &c, solver, &rep) == BPO_OK);
    bpo_report_free(rep);
  }

  bpo_utility reach{};
  REQUIRE(bpo_utility_parse("reach:0", &reach) == BPO_OK);
  CHECK(bpo_solve(inst, &reach, &cfg, BPO_SOLVER_FW, &rep) == BPO_ERROR_INVALID_ARGUMENT);
  bpo_instance_free(inst);
}

TEST_CASE("multi-platform solving through the c api") {
  const char* text =
      "bpo-mp v1\n"
      "L 2\nQ 1\nN 3\nadvertiser 0\nbudget 1\n"
      "sigma 0 0.5\nsigma 1 0.5\n"
      "zeta 0 0 1\nzeta 1 0 1\n"
      "user 0 0 1 1 1 1\nuser 0 0 2 1 1 1\n"
      "user 1 0 1 1 2 1\nuser 1 0 2 1 2 1\n"
      "imp 0 0 1 2 0.5\nimp 1 0 2 1 0.5\n";
  bpo_mp_instance* mp = nullptr;
  REQUIRE(bpo_mp_loads(text, &mp) == BPO_OK);
  int32_t dim = 0, platforms = 0;
  CHECK(bpo_mp_dimension(mp, &dim) == BPO_OK);
  CHECK(dim == 4);
  CHECK(bpo_mp_platforms(mp, &platforms) == BPO_OK);
  CHECK(platforms == 2);

  bpo_utility utility{};
  REQUIRE(bpo_utility_parse("log:5", &utility) == BPO_OK);
  bpo_report* rep = nullptr;
  REQUIRE(bpo_mp_solve(mp, &utility, nullptr, BPO_MP_PER_PLATFORM, &rep) == BPO_OK);
  int32_t rep_platforms = 0;
  CHECK(bpo_report_platforms(rep, &rep_platforms) == BPO_OK);
  REQUIRE(rep_platforms == 2);
  double spend[2], roi[2];
  CHECK(bpo_report_platform_split(rep, spend, roi, 2) == BPO_OK);
  double total = 0.0;
  bpo_report_spend(rep, &total);
  CHECK(spend[0] + spend[1] == doctest::Approx(total).epsilon(1e-12));
  bpo_report_free(rep);
  REQUIRE(bpo_mp_solve(mp, &utility, nullptr, BPO_MP_SHARED, &rep) == BPO_OK);
  bpo_report_free(rep);
  bpo_mp_free(mp);
}
