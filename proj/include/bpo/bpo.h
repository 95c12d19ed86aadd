/* Budgeted influencer-portfolio optimization: C API.
 *
 * The library solves continuous campaign-planning problems: pick how much of
 * each user's posting activity to buy, maximizing a utility of the resulting
 * feed potentials under a budget and per-user caps. It ships a Frank-Wolfe
 * solver with a sort-based linear oracle, baseline solvers for comparison,
 * synthetic-network and impression-estimation tooling, activity-trace
 * ingestion, and a multi-platform problem variant.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Functions return BPO_OK or an error code; bpo_last_error() describes the
 * most recent failure on the calling thread. Handles are immutable once
 * built (except bpo_graph rate setters) and safe to share across threads.
 */
#ifndef BPO_BPO_H
#define BPO_BPO_H

#include <stddef.h>
#include <stdint.h>

#if defined(__cplusplus)
extern "C" {
#endif

#define BPO_OK 0
#define BPO_ERROR_INVALID_ARGUMENT 1
#define BPO_ERROR_IO 2
#define BPO_ERROR_INFEASIBLE 3
#define BPO_ERROR_NULL_POINTER 4

const char* bpo_version(void);
/* thread-local message for the last failing call */
const char* bpo_last_error(void);
void bpo_string_free(char* s);

/* ------------------------------------------------------------------ */
/* campaign instances                                                  */

typedef struct bpo_instance bpo_instance;

int32_t bpo_instance_load(const char* path, bpo_instance** out);
int32_t bpo_instance_loads(const char* text, bpo_instance** out);
int32_t bpo_instance_save(const bpo_instance* inst, const char* path);
void bpo_instance_free(bpo_instance* inst);

int32_t bpo_instance_users(const bpo_instance* inst, int32_t* out);
/* decision dimension: users minus the advertiser */
int32_t bpo_instance_dimension(const bpo_instance* inst, int32_t* out);
int32_t bpo_instance_advertiser(const bpo_instance* inst, int32_t* out);
int32_t bpo_instance_budget(const bpo_instance* inst, double* out);

/* Invariant diagnostics. *text_out (free with bpo_string_free) holds one
 * "error: ..." or "warning: ..." line per finding; counts are split out.
 * Warnings flag viewer columns summing below 1, which estimated matrices
 * legitimately produce. */
int32_t bpo_instance_validate(const bpo_instance* inst, char** text_out, int32_t* errors_out,
                              int32_t* warnings_out);

/* participation spend and campaign metrics; `a` has dimension entries */
int32_t bpo_instance_spend(const bpo_instance* inst, const double* a, int32_t len, double* out);

typedef struct {
  double total_impressions;
  double total_sales;
  int64_t total_reach;
  int64_t selected;
  int64_t selected_nano;
  int64_t selected_micro;
  int64_t selected_macro;
  int32_t has_tiers;
  double spend;
} bpo_metrics_result;

/* tiers: optional per-user array (length users) of BPO_TIER_* values */
#define BPO_TIER_NON_INFLUENCER 0
#define BPO_TIER_NANO 1
#define BPO_TIER_MICRO 2
#define BPO_TIER_MACRO 3

int32_t bpo_instance_metrics(const bpo_instance* inst, const double* a, int32_t len, double delta,
                             double epsilon, const int8_t* tiers, bpo_metrics_result* out);

/* ------------------------------------------------------------------ */
/* social graphs and impression estimation                             */

typedef struct bpo_graph bpo_graph;

/* model: "ab" (preferential attachment) or "er" (uniform) */
int32_t bpo_graph_gen(const char* model, int32_t n, int32_t a, uint64_t seed, bpo_graph** out);
int32_t bpo_graph_set_uniform_rates(bpo_graph* g, double lambda, double mu);
int32_t bpo_graph_nodes(const bpo_graph* g, int32_t* out);
int32_t bpo_graph_edges(const bpo_graph* g, int64_t* out);
int32_t bpo_graph_follower_counts(const bpo_graph* g, int64_t* out, int32_t len);
/* follower-decile tiers over users with positive posting rate */
int32_t bpo_graph_tiers(const bpo_graph* g, int8_t* out, int32_t len);
void bpo_graph_free(bpo_graph* g);

typedef struct {
  int32_t feed_size;                /* <= 0: 20 */
  int64_t warmup_events;            /* < 0: 50 * nodes */
  int32_t snapshots;                /* <= 0: 200 */
  int64_t events_between_snapshots; /* < 0: nodes */
  uint64_t seed;
} bpo_feed_config;

#define BPO_COST_PER_THOUSAND 0
#define BPO_COST_UNIT 1

/* Newsfeed-snapshot simulation of impression ratios, priced by the
 * followers-based market rule; budget < 0 means nodes/100. */
int32_t bpo_graph_estimate_instance(const bpo_graph* g, const bpo_feed_config* cfg,
                                    int32_t cost_scale, double budget, int32_t advertiser,
                                    bpo_instance** out);

/* ------------------------------------------------------------------ */
/* activity-trace ingestion                                            */

typedef struct bpo_trace bpo_trace;

/* 4-field records: tweet id, timestamp, user id, retweet id (-1 = self post);
 * malformed lines are collected, not fatal */
int32_t bpo_trace_load(const char* path, bpo_trace** out);
int32_t bpo_trace_loads(const char* text, bpo_trace** out);
int32_t bpo_trace_counts(const bpo_trace* t, int64_t* records_out, int64_t* rejects_out);
void bpo_trace_free(bpo_trace* t);

#define BPO_BUDGET_FIXED 0
#define BPO_BUDGET_PER_USER 1

/* Rates from the record timestamps (window_length is mandatory: the trace
 * itself does not say what "per window" means), star follower graph from
 * retweet pairs, follower-based costs. advertiser_user_id -1 selects the
 * first author in the trace. */
int32_t bpo_trace_build_instance(const bpo_trace* t, double window_length, int32_t cost_scale,
                                 int32_t budget_rule, double budget_value,
                                 int64_t advertiser_user_id, bpo_instance** out);
/* tiers for the instance built with the same window_length */
int32_t bpo_trace_tiers(const bpo_trace* t, double window_length, int8_t* out, int32_t len);
int32_t bpo_trace_dangling_retweets(const bpo_trace* t, int64_t* out);

/* ------------------------------------------------------------------ */
/* solvers                                                             */

#define BPO_UTILITY_LINEAR 0
#define BPO_UTILITY_LOG 1
#define BPO_UTILITY_ALPHA_FAIR 2
#define BPO_UTILITY_REACH 3 /* evaluation only; solvers reject it */

typedef struct {
  int32_t kind;
  double delta;   /* linear / log scale, > 0 */
  double alpha;   /* alpha-fair exponent, >= 0 */
  double epsilon; /* reach threshold, >= 0 */
} bpo_utility;

/* "linear:D", "log:D", "afair:A", "maxmin", "maxmin:A", "reach:E" */
int32_t bpo_utility_parse(const char* text, bpo_utility* out);

#define BPO_STEP_HARMONIC 0
#define BPO_STEP_GAP_OVER_CURVATURE 1
#define BPO_STEP_LINE_SEARCH 2

typedef struct {
  int32_t max_iters;           /* <= 0: 30 */
  double gap_tolerance;        /* <= 0: 0.1 */
  int32_t step_rule;           /* BPO_STEP_*, line search by default */
  double curvature;            /* <= 0: estimated when the step rule needs it */
  uint64_t seed;
  int32_t baseline_iterations; /* subgradient / mirror descent; <= 0: 200 */
  int32_t mc_runs;             /* influence-maximization cascades; <= 0: 100 */
} bpo_solver_config;

#define BPO_SOLVER_FW 0
#define BPO_SOLVER_PS 1
#define BPO_SOLVER_MD 2
#define BPO_SOLVER_HEURISTIC 3
#define BPO_SOLVER_BIM 4

typedef struct bpo_report bpo_report;

int32_t bpo_solve(const bpo_instance* inst, const bpo_utility* utility,
                  const bpo_solver_config* cfg, int32_t solver, bpo_report** out);

/* ------------------------------------------------------------------ */
/* solve reports                                                       */

int32_t bpo_report_dimension(const bpo_report* rep, int32_t* out);
int32_t bpo_report_solution(const bpo_report* rep, double* out, int32_t len);
int32_t bpo_report_objective(const bpo_report* rep, double* out);
int32_t bpo_report_spend(const bpo_report* rep, double* out);
/* recorded iterates; equals the data-row count of the CSV form */
int32_t bpo_report_iterations(const bpo_report* rep, int64_t* out);
int32_t bpo_report_runtime_ms(const bpo_report* rep, double* out);
/* "gap_below_tol" or "max_iters"; pointer lives as long as the report */
int32_t bpo_report_termination(const bpo_report* rep, const char** out);
int32_t bpo_report_residuals(const bpo_report* rep, double* budget_excess, double* box_excess);
int32_t bpo_report_trace(const bpo_report* rep, double* objective_out, double* gap_out,
                         int32_t len);

/* with_timings = 0 zeroes wall-clock fields for byte-reproducible output */
int32_t bpo_report_write_json(const bpo_report* rep, const char* path, int32_t with_timings);
int32_t bpo_report_write_csv(const bpo_report* rep, const char* path, int32_t with_timings);

/* multi-platform extras; platform count is 0 for single-platform reports */
int32_t bpo_report_platforms(const bpo_report* rep, int32_t* out);
int32_t bpo_report_platform_split(const bpo_report* rep, double* spend_out, double* roi_out,
                                  int32_t len);
void bpo_report_free(bpo_report* rep);

/* ------------------------------------------------------------------ */
/* multi-platform instances                                            */

typedef struct bpo_mp_instance bpo_mp_instance;

#define BPO_MP_PER_PLATFORM 0
#define BPO_MP_SHARED 1

int32_t bpo_mp_load(const char* path, bpo_mp_instance** out);
int32_t bpo_mp_loads(const char* text, bpo_mp_instance** out);
int32_t bpo_mp_save(const bpo_mp_instance* mp, const char* path);
int32_t bpo_mp_dimension(const bpo_mp_instance* mp, int32_t* out);
int32_t bpo_mp_platforms(const bpo_mp_instance* mp, int32_t* out);
int32_t bpo_mp_solve(const bpo_mp_instance* mp, const bpo_utility* utility,
                     const bpo_solver_config* cfg, int32_t variant, bpo_report** out);
void bpo_mp_free(bpo_mp_instance* mp);

#if defined(__cplusplus)
} /* extern "C" */
#endif

#endif /* BPO_BPO_H */
