#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/oracle.hpp"
#include "core/utility.hpp"

namespace bpo {

// Differentiable objective over the budget-capped box, presented the way the
// iteration consumes it: joint value+gradient at a point, and cheap values
// along a fixed segment for line search.
class FwObjective {
 public:
  virtual ~FwObjective() = default;
  virtual int32_t dimension() const = 0;
  virtual double value(const std::vector<double>& a) = 0;
  virtual double value_and_gradient(const std::vector<double>& a, std::vector<double>& grad) = 0;
  virtual void prepare_segment(const std::vector<double>& a, const std::vector<double>& dir) = 0;
  virtual double segment_value(double gamma) = 0;
};

// total_utility over a single-platform instance
class InstanceObjective final : public FwObjective {
 public:
  InstanceObjective(const CampaignInstance& inst, const UtilitySpec& spec);
  int32_t dimension() const override;
  double value(const std::vector<double>& a) override;
  double value_and_gradient(const std::vector<double>& a, std::vector<double>& grad) override;
  void prepare_segment(const std::vector<double>& a, const std::vector<double>& dir) override;
  double segment_value(double gamma) override;

 private:
  const CampaignInstance& inst_;
  UtilitySpec spec_;
  std::vector<double> omega_base_;
  std::vector<double> omega_dir_;
};

enum class StepRule { Harmonic, GapOverCurvature, LineSearch };

struct SolverConfig {
  int32_t max_iters = 30;
  double gap_tolerance = 0.1;
  StepRule step_rule = StepRule::LineSearch;
  double curvature = 0.0;  // <= 0: estimated on demand for GapOverCurvature
  int32_t curvature_probes = 64;
  uint64_t seed = 0;
  std::vector<double> init;  // empty means zeros
};

struct SolveReport {
  std::string solver;
  std::string utility;
  std::vector<double> solution;
  double objective = 0.0;
  double spend = 0.0;
  std::vector<double> objective_trace;
  std::vector<double> gap_trace;
  std::vector<double> step_sizes;
  std::vector<double> iter_ms;
  std::string termination;  // "gap_below_tol" or "max_iters"
  int64_t iterations = 0;   // recorded iterates, objective_trace.size()
  double runtime_ms = 0.0;
  double budget_excess = 0.0;  // worst over all iterates
  double box_excess = 0.0;
  std::vector<double> platform_spend;  // multi-platform solves only
  std::vector<double> platform_roi;
};

// step-size rules
double harmonic_step(int32_t t);
double gap_curvature_step(double gap, double curvature);
// golden-section maximizer of phi over [0,1] to 1e-8, with the endpoints
// checked afterwards so exact 0/1 win whenever they are at least as good
template <typename Phi>
double line_search_step(Phi&& phi);

// Frank-Wolfe over an arbitrary objective and feasible set; used directly by
// the multi-platform solver.
SolveReport run_frank_wolfe(FwObjective& objective, const std::vector<double>& unit_costs,
                            const std::vector<double>& caps, double budget,
                            const SolverConfig& cfg);

SolveReport solve_fw(const CampaignInstance& inst, const UtilitySpec& spec,
                     const SolverConfig& cfg);

// Empirical curvature upper bound: max Bregman-type deviation over sampled
// feasible pairs and gamma in {0.25, 0.5, 1}, floored at 1e-12. The first
// probe is always the segment from zero toward the oracle vertex at the
// zero-point gradient, the region the first iteration actually crosses.
double estimate_curvature(FwObjective& objective, const std::vector<double>& unit_costs,
                          const std::vector<double>& caps, double budget, int32_t probes,
                          uint64_t seed);
double estimate_curvature(const CampaignInstance& inst, const UtilitySpec& spec, int32_t probes,
                          uint64_t seed);

// aggregate influence per decision index: phi_k = sum over viewers j not in
// {k, advertiser} of p_k^(j)
std::vector<double> aggregate_influence(const CampaignInstance& inst);

// Greedy fill by influence-per-cost; one oracle call at K = phi. Exact for
// linear utilities, a practical approximation otherwise.
std::vector<double> heuristic_rule_of_thumb(const CampaignInstance& inst);
SolveReport solve_heuristic(const CampaignInstance& inst, const UtilitySpec& spec);

template <typename Phi>
double line_search_step(Phi&& phi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  while (hi - lo > 1e-8) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = phi(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = phi(x1);
    }
  }
  double best = 0.5 * (lo + hi);
  double best_val = phi(best);
  if (phi(1.0) >= best_val) {
    best = 1.0;
    best_val = phi(1.0);
  }
  if (phi(0.0) > best_val) best = 0.0;
  return best;
}

}  // namespace bpo
