#include <bpo/bpo.h>

#include <cstring>
#include <string>
#include <vector>

#include "core/baselines.hpp"
#include "core/errors.hpp"
#include "core/ingest.hpp"
#include "core/io.hpp"
#include "core/model.hpp"
#include "core/multiplatform.hpp"
#include "core/netgen.hpp"
#include "core/solver.hpp"
#include "core/utility.hpp"

namespace {

thread_local std::string tl_last_error;

void set_error(const std::string& msg) { tl_last_error = msg; }

int32_t handle_exception() {
  try {
    throw;
  } catch (const bpo::InfeasibleError& e) {
    set_error(e.what());
    return BPO_ERROR_INFEASIBLE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return BPO_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return BPO_ERROR_IO;
  }
}

#define BPO_REQUIRE(ptr)                                   \
  do {                                                      \
    if (!(ptr)) {                                           \
      set_error("null pointer: " #ptr);                     \
      return BPO_ERROR_NULL_POINTER;                        \
    }                                                       \
  } while (0)

}  // namespace

struct bpo_instance {
  bpo::CampaignInstance inst;
};

struct bpo_graph {
  bpo::SocialGraph graph;
};

struct bpo_trace {
  bpo::ParsedTrace trace;
};

struct bpo_report {
  bpo::SolveReport rep;
};

struct bpo_mp_instance {
  bpo::MultiPlatformInstance mp;
};

extern "C" {

const char* bpo_version(void) { return "1.0.0"; }

const char* bpo_last_error(void) { return tl_last_error.c_str(); }

void bpo_string_free(char* s) { delete[] s; }

/* ------------------------------------------------------------------ */

int32_t bpo_instance_load(const char* path, bpo_instance** out) {
  BPO_REQUIRE(path);
  BPO_REQUIRE(out);
  try {
    *out = new bpo_instance{bpo::read_instance(path)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_instance_loads(const char* text, bpo_instance** out) {
  BPO_REQUIRE(text);
  BPO_REQUIRE(out);
  try {
    *out = new bpo_instance{bpo::read_instance_text(text)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_instance_save(const bpo_instance* inst, const char* path) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(path);
  try {
    bpo::write_instance(inst->inst, path);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

void bpo_instance_free(bpo_instance* inst) { delete inst; }

int32_t bpo_instance_users(const bpo_instance* inst, int32_t* out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(out);
  *out = inst->inst.n_users();
  return BPO_OK;
}

int32_t bpo_instance_dimension(const bpo_instance* inst, int32_t* out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(out);
  *out = inst->inst.dimension();
  return BPO_OK;
}

int32_t bpo_instance_advertiser(const bpo_instance* inst, int32_t* out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(out);
  *out = inst->inst.advertiser;
  return BPO_OK;
}

int32_t bpo_instance_budget(const bpo_instance* inst, double* out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(out);
  *out = inst->inst.budget;
  return BPO_OK;
}

int32_t bpo_instance_validate(const bpo_instance* inst, char** text_out, int32_t* errors_out,
                              int32_t* warnings_out) {
  BPO_REQUIRE(inst);
  try {
    const auto violations = bpo::validate_instance(inst->inst);
    int32_t errors = 0, warnings = 0;
    std::string text;
    for (const auto& v : violations) {
      const bool is_error = v.severity == bpo::Violation::Severity::Error;
      (is_error ? errors : warnings)++;
      text += is_error ? "error: " : "warning: ";
      text += v.message;
      text += "\n";
    }
    if (errors_out) *errors_out = errors;
    if (warnings_out) *warnings_out = warnings;
    if (text_out) {
      *text_out = new char[text.size() + 1];
      std::memcpy(*text_out, text.c_str(), text.size() + 1);
    }
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_instance_spend(const bpo_instance* inst, const double* a, int32_t len, double* out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(a);
  BPO_REQUIRE(out);
  try {
    std::vector<double> v(a, a + len);
    *out = bpo::spend(inst->inst, v);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_instance_metrics(const bpo_instance* inst, const double* a, int32_t len, double delta,
                             double epsilon, const int8_t* tiers, bpo_metrics_result* out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(a);
  BPO_REQUIRE(out);
  try {
    std::vector<double> v(a, a + len);
    std::vector<bpo::Tier> tier_vec;
    if (tiers) {
      tier_vec.resize(inst->inst.n_users());
      for (int32_t u = 0; u < inst->inst.n_users(); ++u)
        tier_vec[u] = static_cast<bpo::Tier>(tiers[u]);
    }
    const auto m = bpo::metrics(inst->inst, v, delta, epsilon, tiers ? &tier_vec : nullptr);
    *out = {m.total_impressions, m.total_sales,    m.total_reach,
            m.selected,          m.selected_nano,  m.selected_micro,
            m.selected_macro,    m.has_tiers ? 1 : 0, m.spend};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

/* ------------------------------------------------------------------ */

int32_t bpo_graph_gen(const char* model, int32_t n, int32_t a, uint64_t seed, bpo_graph** out) {
  BPO_REQUIRE(model);
  BPO_REQUIRE(out);
  try {
    const std::string m(model);
    if (m == "ab")
      *out = new bpo_graph{bpo::gen_ab(n, a, seed)};
    else if (m == "er")
      *out = new bpo_graph{bpo::gen_er(n, a, seed)};
    else
      throw std::invalid_argument("unknown graph model: " + m);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_graph_set_uniform_rates(bpo_graph* g, double lambda, double mu) {
  BPO_REQUIRE(g);
  try {
    g->graph.set_uniform_rates(lambda, mu);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_graph_nodes(const bpo_graph* g, int32_t* out) {
  BPO_REQUIRE(g);
  BPO_REQUIRE(out);
  *out = g->graph.n_nodes;
  return BPO_OK;
}

int32_t bpo_graph_edges(const bpo_graph* g, int64_t* out) {
  BPO_REQUIRE(g);
  BPO_REQUIRE(out);
  *out = g->graph.edge_count();
  return BPO_OK;
}

int32_t bpo_graph_follower_counts(const bpo_graph* g, int64_t* out, int32_t len) {
  BPO_REQUIRE(g);
  BPO_REQUIRE(out);
  if (len != g->graph.n_nodes) {
    set_error("buffer length does not match node count");
    return BPO_ERROR_INVALID_ARGUMENT;
  }
  const auto counts = g->graph.follower_counts();
  std::memcpy(out, counts.data(), counts.size() * sizeof(int64_t));
  return BPO_OK;
}

int32_t bpo_graph_tiers(const bpo_graph* g, int8_t* out, int32_t len) {
  BPO_REQUIRE(g);
  BPO_REQUIRE(out);
  if (len != g->graph.n_nodes) {
    set_error("buffer length does not match node count");
    return BPO_ERROR_INVALID_ARGUMENT;
  }
  try {
    const auto assignment = bpo::classify_influencers(g->graph, g->graph.post_rates);
    for (int32_t u = 0; u < len; ++u) out[u] = static_cast<int8_t>(assignment.tiers[u]);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

void bpo_graph_free(bpo_graph* g) { delete g; }

int32_t bpo_graph_estimate_instance(const bpo_graph* g, const bpo_feed_config* cfg,
                                    int32_t cost_scale, double budget, int32_t advertiser,
                                    bpo_instance** out) {
  BPO_REQUIRE(g);
  BPO_REQUIRE(out);
  try {
    bpo::FeedSimConfig feed_cfg;
    if (cfg) {
      if (cfg->feed_size > 0) feed_cfg.feed_size = cfg->feed_size;
      feed_cfg.warmup_events = cfg->warmup_events;
      if (cfg->snapshots > 0) feed_cfg.snapshots = cfg->snapshots;
      feed_cfg.events_between_snapshots = cfg->events_between_snapshots;
      feed_cfg.seed = cfg->seed;
    }
    bpo::CampaignInstance inst;
    inst.impressions = bpo::estimate_impressions(g->graph, feed_cfg);
    inst.advertiser = advertiser;
    inst.rates = g->graph.post_rates;
    inst.costs = bpo::default_costs(g->graph, cost_scale == BPO_COST_UNIT
                                                  ? bpo::CostScale::Unit
                                                  : bpo::CostScale::PerThousand);
    inst.caps.assign(g->graph.n_nodes, 1.0);
    inst.budget = budget >= 0.0 ? budget : g->graph.n_nodes / 100.0;
    if (advertiser < 0 || advertiser >= g->graph.n_nodes)
      throw std::invalid_argument("advertiser id out of range");
    *out = new bpo_instance{std::move(inst)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

/* ------------------------------------------------------------------ */

int32_t bpo_trace_load(const char* path, bpo_trace** out) {
  BPO_REQUIRE(path);
  BPO_REQUIRE(out);
  try {
    *out = new bpo_trace{bpo::parse_trace(path)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_trace_loads(const char* text, bpo_trace** out) {
  BPO_REQUIRE(text);
  BPO_REQUIRE(out);
  try {
    *out = new bpo_trace{bpo::parse_trace_text(text)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_trace_counts(const bpo_trace* t, int64_t* records_out, int64_t* rejects_out) {
  BPO_REQUIRE(t);
  if (records_out) *records_out = static_cast<int64_t>(t->trace.records.size());
  if (rejects_out) *rejects_out = static_cast<int64_t>(t->trace.rejects.size());
  return BPO_OK;
}

void bpo_trace_free(bpo_trace* t) { delete t; }

int32_t bpo_trace_build_instance(const bpo_trace* t, double window_length, int32_t cost_scale,
                                 int32_t budget_rule, double budget_value,
                                 int64_t advertiser_user_id, bpo_instance** out) {
  BPO_REQUIRE(t);
  BPO_REQUIRE(out);
  try {
    const auto rates = bpo::derive_rates(t->trace.records, window_length);
    const auto star = bpo::build_star_graph(t->trace.records, rates);
    bpo::CampaignInstance inst;
    const int32_t n = star.graph.n_nodes;
    // impressions for trace instances come from the feed simulator over the
    // reconstructed star graph with the empirical rates
    bpo::FeedSimConfig feed_cfg;
    inst.impressions = bpo::estimate_impressions(star.graph, feed_cfg);
    inst.rates = rates.lambda;
    inst.costs = bpo::default_costs(star.graph, cost_scale == BPO_COST_UNIT
                                                    ? bpo::CostScale::Unit
                                                    : bpo::CostScale::PerThousand);
    inst.caps.assign(n, 1.0);
    inst.budget = budget_rule == BPO_BUDGET_PER_USER ? budget_value * n : budget_value;
    int32_t advertiser = 0;
    if (advertiser_user_id >= 0) {
      advertiser = rates.index_of(advertiser_user_id);
      if (advertiser < 0)
        throw std::invalid_argument("advertiser user id not present in the trace");
    }
    inst.advertiser = advertiser;
    *out = new bpo_instance{std::move(inst)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_trace_tiers(const bpo_trace* t, double window_length, int8_t* out, int32_t len) {
  BPO_REQUIRE(t);
  BPO_REQUIRE(out);
  try {
    const auto rates = bpo::derive_rates(t->trace.records, window_length);
    const auto star = bpo::build_star_graph(t->trace.records, rates);
    if (len != star.graph.n_nodes)
      throw std::invalid_argument("buffer length does not match user count");
    const auto assignment = bpo::classify_influencers(star.graph, rates.lambda);
    for (int32_t u = 0; u < len; ++u) out[u] = static_cast<int8_t>(assignment.tiers[u]);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_trace_dangling_retweets(const bpo_trace* t, int64_t* out) {
  BPO_REQUIRE(t);
  BPO_REQUIRE(out);
  try {
    const auto rates = bpo::derive_rates(t->trace.records, 1.0);
    *out = bpo::build_star_graph(t->trace.records, rates).dangling_retweets;
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

/* ------------------------------------------------------------------ */

int32_t bpo_utility_parse(const char* text, bpo_utility* out) {
  BPO_REQUIRE(text);
  BPO_REQUIRE(out);
  try {
    const std::string s(text);
    const auto colon = s.find(':');
    const std::string head = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    auto arg_or = [&](double fallback) { return arg.empty() ? fallback : std::stod(arg); };
    if (head == "linear")
      *out = {BPO_UTILITY_LINEAR, arg_or(1.0), 0.0, 0.0};
    else if (head == "log")
      *out = {BPO_UTILITY_LOG, arg_or(1.0), 0.0, 0.0};
    else if (head == "afair")
      *out = {BPO_UTILITY_ALPHA_FAIR, 1.0, arg_or(0.0), 0.0};
    else if (head == "maxmin")
      *out = {BPO_UTILITY_ALPHA_FAIR, 1.0, arg_or(8.0), 0.0};
    else if (head == "reach")
      *out = {BPO_UTILITY_REACH, 1.0, 0.0, arg_or(0.0)};
    else
      throw std::invalid_argument("unknown utility '" + s + "'");
    return BPO_OK;
  } catch (const std::exception&) {
    set_error(std::string("cannot parse utility '") + text + "'");
    return BPO_ERROR_INVALID_ARGUMENT;
  }
}

namespace {

bpo::UtilitySpec to_spec(const bpo_utility& u) {
  switch (u.kind) {
    case BPO_UTILITY_LINEAR: return bpo::UtilitySpec::linear(u.delta);
    case BPO_UTILITY_LOG: return bpo::UtilitySpec::log(u.delta);
    case BPO_UTILITY_ALPHA_FAIR: return bpo::UtilitySpec::alpha_fair(u.alpha);
    case BPO_UTILITY_REACH: return bpo::UtilitySpec::reach(u.epsilon);
    default: throw std::invalid_argument("unknown utility kind");
  }
}

bpo::SolverConfig to_solver_config(const bpo_solver_config* cfg) {
  bpo::SolverConfig out;
  if (!cfg) return out;
  if (cfg->max_iters > 0) out.max_iters = cfg->max_iters;
  if (cfg->gap_tolerance > 0.0) out.gap_tolerance = cfg->gap_tolerance;
  switch (cfg->step_rule) {
    case BPO_STEP_HARMONIC: out.step_rule = bpo::StepRule::Harmonic; break;
    case BPO_STEP_GAP_OVER_CURVATURE: out.step_rule = bpo::StepRule::GapOverCurvature; break;
    default: out.step_rule = bpo::StepRule::LineSearch; break;
  }
  out.curvature = cfg->curvature;
  out.seed = cfg->seed;
  return out;
}

}  // namespace

int32_t bpo_solve(const bpo_instance* inst, const bpo_utility* utility,
                  const bpo_solver_config* cfg, int32_t solver, bpo_report** out) {
  BPO_REQUIRE(inst);
  BPO_REQUIRE(utility);
  BPO_REQUIRE(out);
  try {
    const auto spec = to_spec(*utility);
    const auto solver_cfg = to_solver_config(cfg);
    bpo::SubgradientConfig sub_cfg;
    if (cfg && cfg->baseline_iterations > 0) sub_cfg.iterations = cfg->baseline_iterations;
    bpo::SolveReport rep;
    switch (solver) {
      case BPO_SOLVER_FW: rep = bpo::solve_fw(inst->inst, spec, solver_cfg); break;
      case BPO_SOLVER_PS: rep = bpo::solve_projected_subgradient(inst->inst, spec, sub_cfg); break;
      case BPO_SOLVER_MD: rep = bpo::solve_mirror_descent(inst->inst, spec, sub_cfg); break;
      case BPO_SOLVER_HEURISTIC: rep = bpo::solve_heuristic(inst->inst, spec); break;
      case BPO_SOLVER_BIM:
        rep = bpo::solve_bim(inst->inst, spec, cfg && cfg->mc_runs > 0 ? cfg->mc_runs : 100,
                             cfg ? cfg->seed : 0);
        break;
      default: throw std::invalid_argument("unknown solver id");
    }
    *out = new bpo_report{std::move(rep)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

/* ------------------------------------------------------------------ */

int32_t bpo_report_dimension(const bpo_report* rep, int32_t* out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = static_cast<int32_t>(rep->rep.solution.size());
  return BPO_OK;
}

int32_t bpo_report_solution(const bpo_report* rep, double* out, int32_t len) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  if (len != static_cast<int32_t>(rep->rep.solution.size())) {
    set_error("buffer length does not match solution dimension");
    return BPO_ERROR_INVALID_ARGUMENT;
  }
  std::memcpy(out, rep->rep.solution.data(), rep->rep.solution.size() * sizeof(double));
  return BPO_OK;
}

int32_t bpo_report_objective(const bpo_report* rep, double* out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = rep->rep.objective;
  return BPO_OK;
}

int32_t bpo_report_spend(const bpo_report* rep, double* out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = rep->rep.spend;
  return BPO_OK;
}

int32_t bpo_report_iterations(const bpo_report* rep, int64_t* out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = rep->rep.iterations;
  return BPO_OK;
}

int32_t bpo_report_runtime_ms(const bpo_report* rep, double* out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = rep->rep.runtime_ms;
  return BPO_OK;
}

int32_t bpo_report_termination(const bpo_report* rep, const char** out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = rep->rep.termination.c_str();
  return BPO_OK;
}

int32_t bpo_report_residuals(const bpo_report* rep, double* budget_excess, double* box_excess) {
  BPO_REQUIRE(rep);
  if (budget_excess) *budget_excess = rep->rep.budget_excess;
  if (box_excess) *box_excess = rep->rep.box_excess;
  return BPO_OK;
}

int32_t bpo_report_trace(const bpo_report* rep, double* objective_out, double* gap_out,
                         int32_t len) {
  BPO_REQUIRE(rep);
  if (len != static_cast<int32_t>(rep->rep.objective_trace.size())) {
    set_error("buffer length does not match trace length");
    return BPO_ERROR_INVALID_ARGUMENT;
  }
  if (objective_out)
    std::memcpy(objective_out, rep->rep.objective_trace.data(), len * sizeof(double));
  if (gap_out) {
    for (int32_t t = 0; t < len; ++t)
      gap_out[t] = t < static_cast<int32_t>(rep->rep.gap_trace.size()) ? rep->rep.gap_trace[t] : 0.0;
  }
  return BPO_OK;
}

int32_t bpo_report_write_json(const bpo_report* rep, const char* path, int32_t with_timings) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(path);
  try {
    bpo::write_text_file(path, bpo::report_to_json(rep->rep, with_timings != 0));
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_report_write_csv(const bpo_report* rep, const char* path, int32_t with_timings) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(path);
  try {
    bpo::write_text_file(path, bpo::report_to_csv(rep->rep, with_timings != 0));
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_report_platforms(const bpo_report* rep, int32_t* out) {
  BPO_REQUIRE(rep);
  BPO_REQUIRE(out);
  *out = static_cast<int32_t>(rep->rep.platform_spend.size());
  return BPO_OK;
}

int32_t bpo_report_platform_split(const bpo_report* rep, double* spend_out, double* roi_out,
                                  int32_t len) {
  BPO_REQUIRE(rep);
  if (len != static_cast<int32_t>(rep->rep.platform_spend.size())) {
    set_error("buffer length does not match platform count");
    return BPO_ERROR_INVALID_ARGUMENT;
  }
  if (spend_out)
    std::memcpy(spend_out, rep->rep.platform_spend.data(), len * sizeof(double));
  if (roi_out) std::memcpy(roi_out, rep->rep.platform_roi.data(), len * sizeof(double));
  return BPO_OK;
}

void bpo_report_free(bpo_report* rep) { delete rep; }

/* ------------------------------------------------------------------ */

int32_t bpo_mp_load(const char* path, bpo_mp_instance** out) {
  BPO_REQUIRE(path);
  BPO_REQUIRE(out);
  try {
    *out = new bpo_mp_instance{bpo::read_mp_instance(path)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_mp_loads(const char* text, bpo_mp_instance** out) {
  BPO_REQUIRE(text);
  BPO_REQUIRE(out);
  try {
    *out = new bpo_mp_instance{bpo::read_mp_instance_text(text)};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_mp_save(const bpo_mp_instance* mp, const char* path) {
  BPO_REQUIRE(mp);
  BPO_REQUIRE(path);
  try {
    bpo::write_mp_instance(mp->mp, path);
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

int32_t bpo_mp_dimension(const bpo_mp_instance* mp, int32_t* out) {
  BPO_REQUIRE(mp);
  BPO_REQUIRE(out);
  *out = mp->mp.dimension();
  return BPO_OK;
}

int32_t bpo_mp_platforms(const bpo_mp_instance* mp, int32_t* out) {
  BPO_REQUIRE(mp);
  BPO_REQUIRE(out);
  *out = mp->mp.platforms();
  return BPO_OK;
}

int32_t bpo_mp_solve(const bpo_mp_instance* mp, const bpo_utility* utility,
                     const bpo_solver_config* cfg, int32_t variant, bpo_report** out) {
  BPO_REQUIRE(mp);
  BPO_REQUIRE(utility);
  BPO_REQUIRE(out);
  try {
    const auto spec = to_spec(*utility);
    const auto v = variant == BPO_MP_SHARED ? bpo::MpVariant::SharedUtility
                                            : bpo::MpVariant::PerPlatformUtility;
    *out = new bpo_report{bpo::solve_mp(mp->mp, spec, v, to_solver_config(cfg))};
    return BPO_OK;
  } catch (...) {
    return handle_exception();
  }
}

void bpo_mp_free(bpo_mp_instance* mp) { delete mp; }

} /* extern "C" */
