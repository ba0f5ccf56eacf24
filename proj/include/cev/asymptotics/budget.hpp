#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cev/asymptotics/parallel.hpp"
#include "cev/asymptotics/rng.hpp"
#include "cev/core/combine.hpp"
#include "cev/core/errors.hpp"
#include "cev/core/vectors.hpp"

namespace cev {

// One simulated data set together with the indices that are truly null.
template <class Data>
struct NullDraw {
  Data data;
  NullMask nulls;
};

struct MonteCarloOptions {
  long replications = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct BudgetEstimate {
  double mean_budget = 0.0;  // (1/K) sum over nulls of the mean e-value
  double std_error = 0.0;
  long replications = 0;
  std::optional<double> trimmed_at;
};

// Mean and standard error of per-replication budgets.
BudgetEstimate summarize_budgets(std::span<const double> budgets,
                                 std::optional<double> cap = std::nullopt);

// For each epsilon, the smallest fraction of replications that must be
// discarded (largest budgets first) so that the remaining sum divided by the
// total count is at most 1 + epsilon.
std::vector<ApproxBudget> trimmed_budgets(std::span<const double> budgets,
                                          std::span<const double> epsilon_grid);

// Per-replication (1/K) sum_{k null} min(E_k, cap). Replication r draws from
// RngStream(seed, r).
template <class Generator, class Construction>
std::vector<double> replicate_budgets(Generator&& generator,
                                      Construction&& construction,
                                      const MonteCarloOptions& options,
                                      std::optional<double> cap = std::nullopt) {
  if (options.replications < 1) throw ConfigError("need at least one replication");
  std::vector<double> budgets(static_cast<std::size_t>(options.replications));
  parallel_for(budgets.size(), options.threads, [&](std::size_t r) {
    RngStream rng(options.seed, r);
    auto draw = generator(rng);
    const EVector e = construction(draw.data);
    if (e.size() != draw.nulls.size()) {
      throw ShapeError("construction returned " + std::to_string(e.size()) +
                       " e-values for " + std::to_string(draw.nulls.size()) +
                       " hypotheses");
    }
    if (!draw.nulls.any()) {
      throw ConfigError("budget scenario has no null hypotheses");
    }
    double sum = 0.0;
    for (Index k = 0; k < e.size(); ++k) {
      if (draw.nulls[k]) sum += cap ? std::min(e[k], *cap) : e[k];
    }
    budgets[r] = sum / static_cast<double>(e.size());
  });
  return budgets;
}

template <class Generator, class Construction>
BudgetEstimate estimate_compound_budget(Generator&& generator,
                                        Construction&& construction,
                                        const MonteCarloOptions& options,
                                        std::optional<double> cap = std::nullopt) {
  if (options.replications < 100) {
    throw ConfigError("budget estimation needs at least 100 replications");
  }
  const auto budgets = replicate_budgets(generator, construction, options, cap);
  return summarize_budgets(budgets, cap);
}

template <class Generator, class Construction>
std::vector<ApproxBudget> estimate_approx_budget(
    Generator&& generator, Construction&& construction,
    const MonteCarloOptions& options, std::span<const double> epsilon_grid) {
  if (options.replications < 1000) {
    throw ConfigError("approximate budget estimation needs at least 1000 replications");
  }
  const auto budgets = replicate_budgets(generator, construction, options);
  return trimmed_budgets(budgets, epsilon_grid);
}

}  // namespace cev
