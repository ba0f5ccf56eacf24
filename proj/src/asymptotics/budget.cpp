#include "cev/asymptotics/budget.hpp"

namespace cev {

BudgetEstimate summarize_budgets(std::span<const double> budgets,
                                 std::optional<double> cap) {
  if (budgets.empty()) throw ConfigError("no replications to summarize");
  const auto R = static_cast<double>(budgets.size());
  const double mean = pairwise_sum(budgets) / R;
  std::vector<double> squares(budgets.size());
  for (std::size_t r = 0; r < budgets.size(); ++r) {
    squares[r] = (budgets[r] - mean) * (budgets[r] - mean);
  }
  const double variance = budgets.size() > 1 ? pairwise_sum(squares) / (R - 1.0) : 0.0;
  return BudgetEstimate{mean, std::sqrt(variance / R),
                        static_cast<long>(budgets.size()), cap};
}

std::vector<ApproxBudget> trimmed_budgets(std::span<const double> budgets,
                                          std::span<const double> epsilon_grid) {
  if (budgets.empty()) throw ConfigError("no replications to trim");
  std::vector<double> sorted(budgets.begin(), budgets.end());
  std::sort(sorted.begin(), sorted.end());
  const auto R = static_cast<double>(sorted.size());
  // prefix[i] = sum of the i smallest budgets.
  std::vector<double> prefix(sorted.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) prefix[i + 1] = prefix[i] + sorted[i];
  std::vector<ApproxBudget> out;
  out.reserve(epsilon_grid.size());
  for (double eps : epsilon_grid) {
    if (std::isnan(eps) || eps < 0.0) throw DomainError("epsilon must be nonnegative");
    std::size_t keep = sorted.size();
    while (keep > 0 && prefix[keep] / R > 1.0 + eps) --keep;
    out.emplace_back(eps, static_cast<double>(sorted.size() - keep) / R);
  }
  return out;
}

}  // namespace cev
