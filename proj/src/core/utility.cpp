#include "core/utility.hpp"

#include <cmath>
#include <stdexcept>

namespace bpo {

UtilitySpec UtilitySpec::linear(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("linear utility requires delta > 0");
  return {Kind::Linear, delta, 0.0, 0.0};
}

UtilitySpec UtilitySpec::log(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("log utility requires delta > 0");
  return {Kind::Log, delta, 0.0, 0.0};
}

UtilitySpec UtilitySpec::alpha_fair(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha-fair utility requires alpha >= 0");
  return {Kind::AlphaFair, 1.0, alpha, 0.0};
}

UtilitySpec UtilitySpec::reach(double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("reach indicator requires epsilon >= 0");
  return {Kind::ReachIndicator, 1.0, 0.0, epsilon};
}

std::string UtilitySpec::name() const {
  switch (kind) {
    case Kind::Linear: return "linear:" + std::to_string(delta);
    case Kind::Log: return "log:" + std::to_string(delta);
    case Kind::AlphaFair: return "afair:" + std::to_string(alpha);
    case Kind::ReachIndicator: return "reach:" + std::to_string(epsilon);
  }
  return "?";
}

double eval(const UtilitySpec& spec, double omega) {
  if (!(omega >= 0.0)) throw std::invalid_argument("utility argument must be nonnegative");
  switch (spec.kind) {
    case UtilitySpec::Kind::Linear: return spec.delta * omega;
    case UtilitySpec::Kind::Log: return std::log(spec.delta * omega + 1.0);
    case UtilitySpec::Kind::AlphaFair:
      // alpha = 1 is the proportional-fairness limit
      if (spec.alpha == 1.0) return std::log(1.0 + omega);
      return std::pow(1.0 + omega, 1.0 - spec.alpha) / (1.0 - spec.alpha);
    case UtilitySpec::Kind::ReachIndicator: return omega > spec.epsilon ? 1.0 : 0.0;
  }
  throw std::logic_error("unknown utility kind");
}

double deriv(const UtilitySpec& spec, double omega) {
  if (!(omega >= 0.0)) throw std::invalid_argument("utility argument must be nonnegative");
  switch (spec.kind) {
    case UtilitySpec::Kind::Linear: return spec.delta;
    case UtilitySpec::Kind::Log: return spec.delta / (spec.delta * omega + 1.0);
    case UtilitySpec::Kind::AlphaFair: return std::pow(1.0 + omega, -spec.alpha);
    case UtilitySpec::Kind::ReachIndicator:
      throw std::invalid_argument("non-differentiable utility");
  }
  throw std::logic_error("unknown utility kind");
}

double total_utility_at(const CampaignInstance& inst, const UtilitySpec& spec,
                        const std::vector<double>& omega) {
  double total = 0.0;
  for (int32_t j = 0; j < inst.n_users(); ++j) {
    if (j == inst.advertiser) continue;
    total += eval(spec, omega[j]);
  }
  return total;
}

double total_utility(const CampaignInstance& inst, const UtilitySpec& spec,
                     const std::vector<double>& a) {
  return total_utility_at(inst, spec, potentials(inst, a));
}

std::vector<double> gradient_at(const CampaignInstance& inst, const UtilitySpec& spec,
                                const std::vector<double>& omega) {
  if (!spec.differentiable()) throw std::invalid_argument("non-differentiable utility");
  const int32_t n = inst.n_users();
  std::vector<double> marginal(n, 0.0);
  for (int32_t j = 0; j < n; ++j) {
    if (j == inst.advertiser) continue;
    marginal[j] = deriv(spec, omega[j]);
  }
  std::vector<double> grad(inst.dimension(), 0.0);
  for (int32_t d = 0; d < inst.dimension(); ++d) {
    const int32_t k = inst.user_of(d);
    double g = 0.0;
    for (const auto* e = inst.impressions.source_begin(k); e != inst.impressions.source_end(k); ++e) {
      if (e->viewer == inst.advertiser) continue;  // marginal there is zero anyway
      g += marginal[e->viewer] * e->value;
    }
    grad[d] = g;
  }
  return grad;
}

std::vector<double> gradient(const CampaignInstance& inst, const UtilitySpec& spec,
                             const std::vector<double>& a) {
  return gradient_at(inst, spec, potentials(inst, a));
}

}  // namespace bpo
