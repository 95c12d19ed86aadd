#pragma once

#include <cstdint>
#include <vector>

namespace bpo {

// max <K, s> over {0 <= s <= caps, <unit_costs, s> <= budget}
struct LinearSubproblem {
  std::vector<double> coefficients;  // K, one per decision index
  std::vector<double> unit_costs;    // rho_n = c_n * lambda_n, nonnegative
  std::vector<double> caps;          // box upper bounds in [0,1]
  double budget = 0.0;
};

// Reusable buffers plus the paying-user set, which depends only on the unit
// costs and so is computed once per instance rather than per oracle call.
class OracleWorkspace {
 public:
  OracleWorkspace(const std::vector<double>& unit_costs, const std::vector<double>& caps,
                  double budget);

  // Exact maximizer: free users (zero unit cost) at cap when the coefficient
  // is strictly positive; paying users sorted by coefficient-to-cost ratio
  // (descending, ties toward lower index) and filled at caps until the budget
  // breaks, with the breaking user taking the fractional remainder. Paying
  // users with non-positive coefficients stay at zero.
  std::vector<double> solve(const std::vector<double>& coefficients);

 private:
  std::vector<double> unit_costs_;
  std::vector<double> caps_;
  double budget_;
  std::vector<int32_t> paying_;  // indices with positive unit cost
  std::vector<int32_t> free_;    // indices with zero unit cost
  std::vector<int32_t> order_;   // scratch for the sort
  std::vector<double> ratios_;   // scratch, indexed by decision index
};

std::vector<double> solve_linear_subproblem(const LinearSubproblem& sub);

// <grad, s - a>; nonnegative whenever s is the oracle maximizer at a
double fw_gap(const std::vector<double>& grad, const std::vector<double>& s,
              const std::vector<double>& a);

}  // namespace bpo
