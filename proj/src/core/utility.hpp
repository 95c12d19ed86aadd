#pragma once

#include <string>
#include <vector>

#include "core/model.hpp"

namespace bpo {

// Per-user utility family applied to potentials. ReachIndicator is an
// evaluation-only metric; solvers reject it because it has no derivative.
struct UtilitySpec {
  enum class Kind { Linear, Log, AlphaFair, ReachIndicator };
  Kind kind = Kind::Log;
  double delta = 1.0;    // Linear / Log scale
  double alpha = 0.0;    // AlphaFair exponent
  double epsilon = 0.0;  // ReachIndicator threshold

  static UtilitySpec linear(double delta);
  static UtilitySpec log(double delta);
  static UtilitySpec alpha_fair(double alpha);
  static UtilitySpec reach(double epsilon);

  bool differentiable() const { return kind != Kind::ReachIndicator; }
  std::string name() const;
};

double eval(const UtilitySpec& spec, double omega);
double deriv(const UtilitySpec& spec, double omega);

double total_utility(const CampaignInstance& inst, const UtilitySpec& spec,
                     const std::vector<double>& a);

// d/da_k of the total utility: sum over viewers j (excluding the advertiser
// and k itself) of U'(omega_j) * p_k^(j). One pass over entries grouped by
// source; O(D + N).
std::vector<double> gradient(const CampaignInstance& inst, const UtilitySpec& spec,
                             const std::vector<double>& a);

// same, reusing precomputed potentials
std::vector<double> gradient_at(const CampaignInstance& inst, const UtilitySpec& spec,
                                const std::vector<double>& omega);

double total_utility_at(const CampaignInstance& inst, const UtilitySpec& spec,
                        const std::vector<double>& omega);

}  // namespace bpo
