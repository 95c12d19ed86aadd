#pragma once

#include <cstdint>
#include <vector>

#include "core/model.hpp"
#include "core/solver.hpp"

namespace bpo {

// Euclidean projection onto {0 <= a <= caps, <unit_costs, a> <= budget}:
// box clip, then if the budget is violated, a(theta) = clip(x - theta*rho)
// with theta >= 0 located by bisection until the spend matches the budget.
std::vector<double> project_onto_feasible(const std::vector<double>& x,
                                          const std::vector<double>& unit_costs,
                                          const std::vector<double>& caps, double budget);
std::vector<double> project_onto_feasible(const CampaignInstance& inst,
                                          const std::vector<double>& x);

struct SubgradientConfig {
  int32_t iterations = 200;
  double step_scale = 0.0;  // eta_0; <= 0 means 1/||grad(a0)||
  std::vector<double> init;  // empty means zeros (projected subgradient)
};

// a <- project(a + eta_t * grad), eta_t = eta_0 / sqrt(t+1); best iterate wins
SolveReport solve_projected_subgradient(const CampaignInstance& inst, const UtilitySpec& spec,
                                        const SubgradientConfig& cfg);

// entropic update a <- a * exp(eta_t * grad) from a strictly positive start,
// restored to the feasible set by box clip plus a budget shrink
SolveReport solve_mirror_descent(const CampaignInstance& inst, const UtilitySpec& spec,
                                 const SubgradientConfig& cfg);

// independent-cascade comparison model over the impression support graph
struct ICModel {
  int32_t n_users = 0;
  std::vector<std::vector<int32_t>> out_edges;  // support: source -> viewers
  double propagation_probability = 0.0;
  int32_t mc_runs = 100;
  uint64_t seed = 0;
};

ICModel make_ic_model(const ImpressionMatrix& imp, double probability, int32_t mc_runs,
                      uint64_t seed);

// p = sum over entries of value^(1/k) / N^2, k the mean finite directed
// shortest-path length over the support graph (sampled sources past 2000
// nodes); clipped to [0,1].
double edge_probability(const ImpressionMatrix& imp);

// mean activated-set size over the model's Monte Carlo runs; run m uses an
// independent substream of the model seed
double ic_spread(const ICModel& model, const std::vector<int32_t>& seeds);

struct SeedSet {
  std::vector<int32_t> users;
  double total_cost = 0.0;
  double estimated_spread = 0.0;
};

// Cost-sensitive lazy greedy (CELF) under shared live-edge draws, so lazy and
// plain greedy coincide. Seeding a user buys its full capped activity at
// cost c_n * lambda_n * r_n.
SeedSet solve_bim_celf(const CampaignInstance& inst, const ICModel& model);

// participation induced by a seed set: a_n = r_n on seeds, 0 elsewhere
std::vector<double> induced_participation(const CampaignInstance& inst, const SeedSet& seeds);

SolveReport solve_bim(const CampaignInstance& inst, const UtilitySpec& spec, int32_t mc_runs,
                      uint64_t seed);

}  // namespace bpo
