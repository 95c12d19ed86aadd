#include "core/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace bpo {

OracleWorkspace::OracleWorkspace(const std::vector<double>& unit_costs,
                                 const std::vector<double>& caps, double budget)
    : unit_costs_(unit_costs), caps_(caps), budget_(budget) {
  if (unit_costs.size() != caps.size())
    throw std::invalid_argument("oracle: cost/cap dimension mismatch");
  if (!(budget >= 0.0)) throw std::invalid_argument("oracle: negative budget");
  for (size_t i = 0; i < unit_costs_.size(); ++i) {
    if (!(unit_costs_[i] >= 0.0)) throw std::invalid_argument("oracle: negative unit cost");
    if (!(caps_[i] >= 0.0 && caps_[i] <= 1.0)) throw std::invalid_argument("oracle: cap out of [0,1]");
    if (unit_costs_[i] > 0.0)
      paying_.push_back(static_cast<int32_t>(i));
    else
      free_.push_back(static_cast<int32_t>(i));
  }
  ratios_.resize(unit_costs_.size());
}

std::vector<double> OracleWorkspace::solve(const std::vector<double>& coefficients) {
  if (coefficients.size() != unit_costs_.size())
    throw std::invalid_argument("oracle: coefficient dimension mismatch");
  std::vector<double> s(unit_costs_.size(), 0.0);

  for (int32_t j : free_)
    s[j] = coefficients[j] > 0.0 ? caps_[j] : 0.0;

  order_.clear();
  for (int32_t j : paying_) {
    if (coefficients[j] > 0.0) {
      ratios_[j] = coefficients[j] / unit_costs_[j];
      order_.push_back(j);
    }
  }
  // stable: equal ratios keep ascending index order
  std::stable_sort(order_.begin(), order_.end(),
                   [this](int32_t a, int32_t b) { return ratios_[a] > ratios_[b]; });

  double remaining = budget_;
  for (int32_t j : order_) {
    const double full = unit_costs_[j] * caps_[j];
    if (full <= remaining) {
      s[j] = caps_[j];
      remaining -= full;
    } else {
      s[j] = remaining / unit_costs_[j];
      remaining = 0.0;
      break;
    }
  }
  return s;
}

std::vector<double> solve_linear_subproblem(const LinearSubproblem& sub) {
  OracleWorkspace ws(sub.unit_costs, sub.caps, sub.budget);
  return ws.solve(sub.coefficients);
}

double fw_gap(const std::vector<double>& grad, const std::vector<double>& s,
              const std::vector<double>& a) {
  if (grad.size() != s.size() || grad.size() != a.size())
    throw std::invalid_argument("fw gap: dimension mismatch");
  double gap = 0.0;
  for (size_t i = 0; i < grad.size(); ++i) gap += grad[i] * (s[i] - a[i]);
  return gap;
}

}  // namespace bpo
