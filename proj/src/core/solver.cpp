#include "core/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace bpo {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// direction image under the impression map, advertiser term excluded (it is
// constant along any feasible direction)
std::vector<double> potentials_direction(const CampaignInstance& inst,
                                         const std::vector<double>& dir) {
  std::vector<double> omega(inst.n_users(), 0.0);
  for (int32_t d = 0; d < inst.dimension(); ++d) {
    const double w = dir[d];
    if (w == 0.0) continue;
    const int32_t src = inst.user_of(d);
    for (const auto* e = inst.impressions.source_begin(src);
         e != inst.impressions.source_end(src); ++e)
      omega[e->viewer] += w * e->value;
  }
  return omega;
}

void check_feasible_init(const std::vector<double>& a, const std::vector<double>& unit_costs,
                         const std::vector<double>& caps, double budget) {
  double sp = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < -kBoxTolerance || a[i] > caps[i] + kBoxTolerance)
      throw InfeasibleError("infeasible initial point: box violation");
    sp += unit_costs[i] * a[i];
  }
  if (sp > budget + kBudgetTolerance)
    throw InfeasibleError("infeasible initial point: budget violation");
}

void validate_config(const SolverConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
  if (!(cfg.gap_tolerance > 0.0)) throw std::invalid_argument("solver: tolerance must be > 0");
}

std::vector<double> random_feasible(Rng& rng, const std::vector<double>& unit_costs,
                                    const std::vector<double>& caps, double budget) {
  std::vector<double> x(caps.size());
  double sp = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.next_double() * caps[i];
    sp += unit_costs[i] * x[i];
  }
  if (sp > budget) {
    const double scale = budget / sp;
    for (auto& v : x) v *= scale;
  }
  return x;
}

}  // namespace

InstanceObjective::InstanceObjective(const CampaignInstance& inst, const UtilitySpec& spec)
    : inst_(inst), spec_(spec) {
  if (!spec.differentiable())
    throw std::invalid_argument("non-differentiable utility rejected by solver");
}

int32_t InstanceObjective::dimension() const { return inst_.dimension(); }

double InstanceObjective::value(const std::vector<double>& a) {
  return total_utility(inst_, spec_, a);
}

double InstanceObjective::value_and_gradient(const std::vector<double>& a,
                                             std::vector<double>& grad) {
  const auto omega = potentials(inst_, a);
  grad = gradient_at(inst_, spec_, omega);
  return total_utility_at(inst_, spec_, omega);
}

void InstanceObjective::prepare_segment(const std::vector<double>& a,
                                        const std::vector<double>& dir) {
  omega_base_ = potentials(inst_, a);
  omega_dir_ = potentials_direction(inst_, dir);
}

double InstanceObjective::segment_value(double gamma) {
  double total = 0.0;
  for (int32_t j = 0; j < inst_.n_users(); ++j) {
    if (j == inst_.advertiser) continue;
    // clamp away fp dust: potentials are nonnegative on the feasible segment
    total += eval(spec_, std::max(0.0, omega_base_[j] + gamma * omega_dir_[j]));
  }
  return total;
}

double harmonic_step(int32_t t) { return 2.0 / (t + 2.0); }

double gap_curvature_step(double gap, double curvature) {
  if (!(curvature > 0.0)) throw std::invalid_argument("step rule requires curvature > 0");
  if (gap <= 0.0) return 0.0;
  return std::min(gap / curvature, 1.0);
}

SolveReport run_frank_wolfe(FwObjective& objective, const std::vector<double>& unit_costs,
                            const std::vector<double>& caps, double budget,
                            const SolverConfig& cfg) {
  validate_config(cfg);
  const auto solve_start = Clock::now();
  const int32_t dim = objective.dimension();

  std::vector<double> a = cfg.init.empty() ? std::vector<double>(dim, 0.0) : cfg.init;
  if (static_cast<int32_t>(a.size()) != dim)
    throw std::invalid_argument("initial point has wrong dimension");
  check_feasible_init(a, unit_costs, caps, budget);

  double curvature = cfg.curvature;
  if (cfg.step_rule == StepRule::GapOverCurvature && !(curvature > 0.0))
    curvature = 2.0 * estimate_curvature(objective, unit_costs, caps, budget,
                                         cfg.curvature_probes, cfg.seed);

  OracleWorkspace oracle(unit_costs, caps, budget);
  SolveReport rep;
  rep.solver = "fw";

  std::vector<double> grad(dim), dir(dim);
  auto track_residuals = [&](const std::vector<double>& x) {
    double sp = 0.0, box = 0.0;
    for (int32_t i = 0; i < dim; ++i) {
      sp += unit_costs[i] * x[i];
      box = std::max(box, std::max(-x[i], x[i] - caps[i]));
    }
    rep.budget_excess = std::max(rep.budget_excess, sp - budget);
    rep.box_excess = std::max(rep.box_excess, box);
  };

  for (int32_t t = 0;; ++t) {
    const auto iter_start = Clock::now();
    track_residuals(a);
    const double obj = objective.value_and_gradient(a, grad);
    const auto s = oracle.solve(grad);
    const double gap = fw_gap(grad, s, a);
    rep.objective_trace.push_back(obj);
    rep.gap_trace.push_back(gap);

    if (gap < cfg.gap_tolerance) {
      rep.termination = "gap_below_tol";
      rep.iter_ms.push_back(ms_since(iter_start));
      break;
    }
    if (t == cfg.max_iters) {
      rep.termination = "max_iters";
      rep.iter_ms.push_back(ms_since(iter_start));
      break;
    }

    for (int32_t i = 0; i < dim; ++i) dir[i] = s[i] - a[i];
    double gamma = 0.0;
    switch (cfg.step_rule) {
      case StepRule::Harmonic: gamma = harmonic_step(t); break;
      case StepRule::GapOverCurvature: gamma = gap_curvature_step(gap, curvature); break;
      case StepRule::LineSearch: {
        objective.prepare_segment(a, dir);
        gamma = line_search_step([&](double g) { return objective.segment_value(g); });
        break;
      }
    }
    rep.step_sizes.push_back(gamma);
    for (int32_t i = 0; i < dim; ++i) a[i] += gamma * dir[i];
    rep.iter_ms.push_back(ms_since(iter_start));
  }

  rep.solution = std::move(a);
  rep.objective = rep.objective_trace.back();
  double sp = 0.0;
  for (int32_t i = 0; i < dim; ++i) sp += unit_costs[i] * rep.solution[i];
  rep.spend = sp;
  rep.budget_excess = std::max(rep.budget_excess, 0.0);
  rep.iterations = static_cast<int64_t>(rep.objective_trace.size());
  rep.runtime_ms = ms_since(solve_start);
  return rep;
}

SolveReport solve_fw(const CampaignInstance& inst, const UtilitySpec& spec,
                     const SolverConfig& cfg) {
  InstanceObjective objective(inst, spec);
  auto rep = run_frank_wolfe(objective, inst.decision_unit_costs(), inst.decision_caps(),
                             inst.budget, cfg);
  rep.utility = spec.name();
  return rep;
}

double estimate_curvature(FwObjective& objective, const std::vector<double>& unit_costs,
                          const std::vector<double>& caps, double budget, int32_t probes,
                          uint64_t seed) {
  double best = 1e-12;
  if (probes <= 0) return best;

  const int32_t dim = objective.dimension();
  OracleWorkspace oracle(unit_costs, caps, budget);
  Rng rng(seed);
  std::vector<double> grad(dim), dir(dim), k(dim);

  for (int32_t p = 0; p < probes; ++p) {
    std::vector<double> a, s;
    if (p == 0) {
      a.assign(dim, 0.0);
      objective.value_and_gradient(a, grad);
      s = oracle.solve(grad);
    } else {
      a = random_feasible(rng, unit_costs, caps, budget);
      if (p % 2 == 1) {
        for (auto& v : k) v = rng.next_double();
        s = oracle.solve(k);
      } else {
        s = random_feasible(rng, unit_costs, caps, budget);
      }
    }
    const double fa = objective.value_and_gradient(a, grad);
    double slope = 0.0;
    for (int32_t i = 0; i < dim; ++i) {
      dir[i] = s[i] - a[i];
      slope += grad[i] * dir[i];
    }
    objective.prepare_segment(a, dir);
    for (double gamma : {0.25, 0.5, 1.0}) {
      const double deviation = fa + gamma * slope - objective.segment_value(gamma);
      best = std::max(best, 2.0 / (gamma * gamma) * deviation);
    }
  }
  return best;
}

double estimate_curvature(const CampaignInstance& inst, const UtilitySpec& spec, int32_t probes,
                          uint64_t seed) {
  InstanceObjective objective(inst, spec);
  return estimate_curvature(objective, inst.decision_unit_costs(), inst.decision_caps(),
                            inst.budget, probes, seed);
}

std::vector<double> aggregate_influence(const CampaignInstance& inst) {
  std::vector<double> phi(inst.dimension(), 0.0);
  for (int32_t d = 0; d < inst.dimension(); ++d) {
    const int32_t k = inst.user_of(d);
    double sum = 0.0;
    for (const auto* e = inst.impressions.source_begin(k); e != inst.impressions.source_end(k); ++e) {
      if (e->viewer == inst.advertiser) continue;
      sum += e->value;
    }
    phi[d] = sum;
  }
  return phi;
}

std::vector<double> heuristic_rule_of_thumb(const CampaignInstance& inst) {
  LinearSubproblem sub{aggregate_influence(inst), inst.decision_unit_costs(),
                       inst.decision_caps(), inst.budget};
  return solve_linear_subproblem(sub);
}

SolveReport solve_heuristic(const CampaignInstance& inst, const UtilitySpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.solver = "heuristic";
  rep.utility = spec.name();
  rep.solution = heuristic_rule_of_thumb(inst);
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
