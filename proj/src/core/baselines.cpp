#include "core/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "core/rng.hpp"

namespace bpo {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> project_onto_feasible(const std::vector<double>& x,
                                          const std::vector<double>& unit_costs,
                                          const std::vector<double>& caps, double budget) {
  const size_t dim = x.size();
  if (unit_costs.size() != dim || caps.size() != dim)
    throw std::invalid_argument("projection: dimension mismatch");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("projection: non-finite input");

  auto clipped = [&](double theta, std::vector<double>& out) {
    double sp = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      out[i] = std::clamp(x[i] - theta * unit_costs[i], 0.0, caps[i]);
      sp += unit_costs[i] * out[i];
    }
    return sp;
  };

  std::vector<double> a(dim);
  if (clipped(0.0, a) <= budget) return a;

  double lo = 0.0, hi = 1.0;
  while (clipped(hi, a) > budget) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double sp = clipped(mid, a);
    if (std::abs(sp - budget) <= 1e-10) break;
    (sp > budget ? lo : hi) = mid;
  }
  clipped(0.5 * (lo + hi), a);
  if (dot(unit_costs, a) > budget) clipped(hi, a);
  return a;
}

std::vector<double> project_onto_feasible(const CampaignInstance& inst,
                                          const std::vector<double>& x) {
  return project_onto_feasible(x, inst.decision_unit_costs(), inst.decision_caps(), inst.budget);
}

namespace {

struct BestTracker {
  double objective = -1e300;
  std::vector<double> a;
  void offer(double obj, const std::vector<double>& x) {
    if (obj > objective) {
      objective = obj;
      a = x;
    }
  }
};

SolveReport finish_report(const CampaignInstance& inst, const UtilitySpec& spec,
                          const char* solver, BestTracker& best, SolveReport rep,
                          Clock::time_point start) {
  rep.solver = solver;
  rep.utility = spec.name();
  rep.solution = std::move(best.a);
  rep.objective = best.objective;
  rep.spend = spend(inst, rep.solution);
  rep.termination = "max_iters";
  rep.iterations = static_cast<int64_t>(rep.objective_trace.size());
  rep.runtime_ms = ms_since(start);
  return rep;
}

}  // namespace

SolveReport solve_projected_subgradient(const CampaignInstance& inst, const UtilitySpec& spec,
                                        const SubgradientConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("subgradient: iterations must be >= 1");
  const auto start = Clock::now();
  InstanceObjective objective(inst, spec);
  const auto rho = inst.decision_unit_costs();
  const auto caps = inst.decision_caps();
  const int32_t dim = inst.dimension();

  std::vector<double> a = cfg.init.empty() ? std::vector<double>(dim, 0.0) : cfg.init;
  a = project_onto_feasible(a, rho, caps, inst.budget);

  SolveReport rep;
  BestTracker best;
  std::vector<double> grad(dim);
  double eta0 = cfg.step_scale;
  for (int32_t t = 0; t < cfg.iterations; ++t) {
    const auto iter_start = Clock::now();
    const double obj = objective.value_and_gradient(a, grad);
    rep.objective_trace.push_back(obj);
    best.offer(obj, a);
    rep.budget_excess = std::max(rep.budget_excess, budget_excess(inst, a));
    rep.box_excess = std::max(rep.box_excess, box_excess(inst, a));
    if (eta0 <= 0.0) {
      const double norm = std::sqrt(dot(grad, grad));
      eta0 = norm > 1e-300 ? 1.0 / norm : 1.0;
    }
    const double eta = eta0 / std::sqrt(static_cast<double>(t) + 1.0);
    for (int32_t i = 0; i < dim; ++i) a[i] += eta * grad[i];
    a = project_onto_feasible(a, rho, caps, inst.budget);
    rep.step_sizes.push_back(eta);
    rep.iter_ms.push_back(ms_since(iter_start));
  }
  const double obj = objective.value(a);
  rep.objective_trace.push_back(obj);
  best.offer(obj, a);
  return finish_report(inst, spec, "ps", best, std::move(rep), start);
}

SolveReport solve_mirror_descent(const CampaignInstance& inst, const UtilitySpec& spec,
                                 const SubgradientConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("mirror descent: iterations must be >= 1");
  const auto start = Clock::now();
  InstanceObjective objective(inst, spec);
  const auto rho = inst.decision_unit_costs();
  const auto caps = inst.decision_caps();
  const int32_t dim = inst.dimension();

  // Box clip, then the entropic Bregman restoration onto the budget: each
  // paying coordinate shrinks by exp(-nu * rho_i) with nu found by bisection.
  // Cost-weighting matters: a uniform factor has fixed points at equal
  // gradients instead of equal gradient-to-cost ratios, which stalls the
  // method short of optimality whenever unit costs differ. Zero-cost
  // coordinates keep their clipped values.
  std::vector<double> unclipped(dim);
  auto restore = [&](std::vector<double>& x) {
    unclipped = x;
    auto spend_at = [&](double nu) {
      double sp = 0.0;
      for (int32_t i = 0; i < dim; ++i) {
        x[i] = std::clamp(unclipped[i] * std::exp(-nu * rho[i]), 0.0, caps[i]);
        sp += rho[i] * x[i];
      }
      return sp;
    };
    if (spend_at(0.0) <= inst.budget) return;
    double lo = 0.0, hi = 1.0;
    while (spend_at(hi) > inst.budget) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (spend_at(mid) > inst.budget ? lo : hi) = mid;
    }
    spend_at(hi);
  };

  std::vector<double> a(dim);
  if (cfg.init.empty()) {
    double rho_total = 0.0;
    for (double v : rho) rho_total += v;
    const double fill = rho_total > 0.0 ? inst.budget / rho_total : 1.0;
    for (int32_t i = 0; i < dim; ++i) a[i] = 0.5 * std::min(caps[i], fill);
  } else {
    a = cfg.init;
  }
  restore(a);

  SolveReport rep;
  BestTracker best;
  std::vector<double> grad(dim);
  double eta0 = cfg.step_scale;
  for (int32_t t = 0; t < cfg.iterations; ++t) {
    const auto iter_start = Clock::now();
    const double obj = objective.value_and_gradient(a, grad);
    rep.objective_trace.push_back(obj);
    best.offer(obj, a);
    rep.budget_excess = std::max(rep.budget_excess, budget_excess(inst, a));
    rep.box_excess = std::max(rep.box_excess, box_excess(inst, a));
    if (eta0 <= 0.0) {
      // standard exponentiated-gradient scale: entropy diameter over the
      // dual (sup) norm of the gradient
      double norm = 0.0;
      for (double v : grad) norm = std::max(norm, std::abs(v));
      const double diameter = std::sqrt(2.0 * std::log(std::max<double>(2.0, dim)));
      eta0 = norm > 1e-300 ? diameter / norm : 1.0;
    }
    const double eta = eta0 / std::sqrt(static_cast<double>(t) + 1.0);
    for (int32_t i = 0; i < dim; ++i) a[i] *= std::exp(eta * grad[i]);
    restore(a);
    rep.step_sizes.push_back(eta);
    rep.iter_ms.push_back(ms_since(iter_start));
  }
  const double obj = objective.value(a);
  rep.objective_trace.push_back(obj);
  best.offer(obj, a);
  return finish_report(inst, spec, "md", best, std::move(rep), start);
}

ICModel make_ic_model(const ImpressionMatrix& imp, double probability, int32_t mc_runs,
                      uint64_t seed) {
  if (!(probability >= 0.0 && probability <= 1.0))
    throw std::invalid_argument("propagation probability out of [0,1]");
  if (mc_runs < 1) throw std::invalid_argument("mc_runs must be >= 1");
  ICModel model;
  model.n_users = imp.n_users();
  model.out_edges.resize(model.n_users);
  for (const auto& e : imp.entries())
    if (e.value > 0.0) model.out_edges[e.source].push_back(e.viewer);
  model.propagation_probability = probability;
  model.mc_runs = mc_runs;
  model.seed = seed;
  return model;
}

double edge_probability(const ImpressionMatrix& imp) {
  if (imp.entries().empty()) throw std::invalid_argument("empty impression matrix");
  const int32_t n = imp.n_users();
  std::vector<std::vector<int32_t>> adj(n);
  for (const auto& e : imp.entries())
    if (e.value > 0.0) adj[e.source].push_back(e.viewer);

  // mean finite shortest-path length over ordered pairs, BFS per source
  std::vector<int32_t> sources;
  if (n > 2000) {
    Rng rng(0x5ca1ab1e);
    for (int32_t i = 0; i < 256; ++i) sources.push_back(static_cast<int32_t>(rng.next_below(n)));
  } else {
    sources.resize(n);
    for (int32_t i = 0; i < n; ++i) sources[i] = i;
  }
  double dist_sum = 0.0;
  int64_t dist_count = 0;
  std::vector<int32_t> dist(n);
  std::vector<int32_t> queue(n);
  for (int32_t s : sources) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    int32_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const int32_t u = queue[head++];
      for (int32_t v : adj[u]) {
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        queue[tail++] = v;
      }
    }
    for (int32_t v = 0; v < n; ++v)
      if (v != s && dist[v] > 0) {
        dist_sum += dist[v];
        dist_count++;
      }
  }
  const double k = dist_count > 0 ? dist_sum / static_cast<double>(dist_count) : 1.0;

  double total = 0.0;
  for (const auto& e : imp.entries()) total += std::pow(e.value, 1.0 / k);
  return std::clamp(total / (static_cast<double>(n) * n), 0.0, 1.0);
}

namespace {

// per-run live-edge decision, stable across evaluations
inline bool edge_live(uint64_t seed, int32_t run, int32_t from, int32_t to, double p) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<uint64_t>(run) + 1)) ^
        (static_cast<uint64_t>(static_cast<uint32_t>(from)) << 32 |
         static_cast<uint32_t>(to)));
  return r.next_double() < p;
}

// The per-run live-edge subgraphs, drawn once. Cascades then touch only the
// realized edges, which keeps dense support graphs affordable; spread numbers
// are identical to drawing lazily because each (run, edge) coin is an
// independent hash of its key.
struct LiveGraphs {
  int32_t n = 0;
  int32_t runs = 0;
  std::vector<std::vector<int32_t>> offsets;  // per run, length n + 1
  std::vector<std::vector<int32_t>> targets;  // per run, live edges

  explicit LiveGraphs(const ICModel& model)
      : n(model.n_users), runs(model.mc_runs), offsets(model.mc_runs), targets(model.mc_runs) {
    for (int32_t run = 0; run < runs; ++run) {
      auto& off = offsets[run];
      auto& tgt = targets[run];
      off.assign(static_cast<size_t>(n) + 1, 0);
      for (int32_t u = 0; u < n; ++u) {
        off[u] = static_cast<int32_t>(tgt.size());
        for (int32_t v : model.out_edges[u])
          if (edge_live(model.seed, run, u, v, model.propagation_probability)) tgt.push_back(v);
      }
      off[n] = static_cast<int32_t>(tgt.size());
    }
  }

  // activated count for one run given already-active flags; updates them
  int32_t cascade(int32_t run, const std::vector<int32_t>& seeds, std::vector<uint8_t>& active,
                  std::vector<int32_t>& queue) const {
    int32_t head = 0, tail = 0, activated = 0;
    for (int32_t s : seeds) {
      if (active[s]) continue;
      active[s] = 1;
      activated++;
      queue[tail++] = s;
    }
    const auto& off = offsets[run];
    const auto& tgt = targets[run];
    while (head < tail) {
      const int32_t u = queue[head++];
      for (int32_t e = off[u]; e < off[u + 1]; ++e) {
        const int32_t v = tgt[e];
        if (active[v]) continue;
        active[v] = 1;
        activated++;
        queue[tail++] = v;
      }
    }
    return activated;
  }
};

}  // namespace

double ic_spread(const ICModel& model, const std::vector<int32_t>& seeds) {
  for (int32_t s : seeds)
    if (s < 0 || s >= model.n_users) throw std::invalid_argument("seed id out of range");
  const LiveGraphs live(model);
  int64_t total = 0;
  std::vector<uint8_t> active(model.n_users);
  std::vector<int32_t> queue(model.n_users);
  for (int32_t run = 0; run < model.mc_runs; ++run) {
    std::fill(active.begin(), active.end(), 0);
    total += live.cascade(run, seeds, active, queue);
  }
  return static_cast<double>(total) / model.mc_runs;
}

SeedSet solve_bim_celf(const CampaignInstance& inst, const ICModel& model) {
  SeedSet out;
  const int32_t dim = inst.dimension();
  std::vector<double> seed_cost(dim);
  for (int32_t d = 0; d < dim; ++d) {
    const int32_t u = inst.user_of(d);
    seed_cost[d] = inst.costs[u] * inst.rates[u] * inst.caps[u];
  }

  const LiveGraphs live(model);

  // per-run activation state of the chosen set, reused across marginal evals
  std::vector<std::vector<uint8_t>> active(model.mc_runs,
                                           std::vector<uint8_t>(model.n_users, 0));
  double current_spread = 0.0;

  auto marginal_of = [&](int32_t user) {
    int64_t gain = 0;
    std::vector<uint8_t> scratch;
    std::vector<int32_t> queue(model.n_users);
    const std::vector<int32_t> seed{user};
    for (int32_t run = 0; run < model.mc_runs; ++run) {
      scratch = active[run];
      gain += live.cascade(run, seed, scratch, queue);
    }
    return static_cast<double>(gain) / model.mc_runs;
  };

  struct Entry {
    double gain;
    int32_t decision;
    int32_t evaluated_at_round;
  };
  auto worse = [&](const Entry& a, const Entry& b) {
    const double ra = a.gain / seed_cost[a.decision], rb = b.gain / seed_cost[b.decision];
    if (ra != rb) return ra < rb;
    return a.decision > b.decision;  // deterministic pop order
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  double remaining = inst.budget;
  for (int32_t d = 0; d < dim; ++d) {
    if (seed_cost[d] <= 0.0) continue;  // nothing to buy
    heap.push({marginal_of(inst.user_of(d)), d, 0});
  }

  int32_t round = 0;
  std::vector<int32_t> queue(model.n_users);
  while (!heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    if (seed_cost[top.decision] > remaining) continue;  // never affordable again
    if (top.evaluated_at_round != round) {
      top.gain = marginal_of(inst.user_of(top.decision));
      top.evaluated_at_round = round;
      heap.push(top);
      continue;
    }
    if (top.gain <= 0.0) break;
    const int32_t user = inst.user_of(top.decision);
    out.users.push_back(user);
    out.total_cost += seed_cost[top.decision];
    remaining -= seed_cost[top.decision];
    const std::vector<int32_t> seed{user};
    for (int32_t run = 0; run < model.mc_runs; ++run)
      current_spread +=
          static_cast<double>(live.cascade(run, seed, active[run], queue)) / model.mc_runs;
    round++;
  }
  out.estimated_spread = current_spread;
  std::sort(out.users.begin(), out.users.end());
  return out;
}

std::vector<double> induced_participation(const CampaignInstance& inst, const SeedSet& seeds) {
  std::vector<double> a(inst.dimension(), 0.0);
  for (int32_t u : seeds.users) a[inst.decision_of(u)] = inst.caps[u];
  return a;
}

SolveReport solve_bim(const CampaignInstance& inst, const UtilitySpec& spec, int32_t mc_runs,
                      uint64_t seed) {
  const auto start = Clock::now();
  const double p = edge_probability(inst.impressions);
  const ICModel model = make_ic_model(inst.impressions, p, mc_runs, seed);
  const SeedSet seeds = solve_bim_celf(inst, model);

  SolveReport rep;
  rep.solver = "bim";
  rep.utility = spec.name();
  rep.solution = induced_participation(inst, seeds);
  rep.objective = total_utility(inst, spec, rep.solution);
  rep.objective_trace.push_back(rep.objective);
  rep.spend = spend(inst, rep.solution);
  rep.budget_excess = std::max(0.0, rep.spend - inst.budget);
  rep.box_excess = box_excess(inst, rep.solution);
  rep.termination = "max_iters";
  rep.iterations = 1;
  rep.runtime_ms = ms_since(start);
  return rep;
}

}  // namespace bpo
