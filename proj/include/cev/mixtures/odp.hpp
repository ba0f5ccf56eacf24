#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>

#include "cev/core/vectors.hpp"
#include "cev/mixtures/universal.hpp"

namespace cev {

// sum_j q_j(x) / sum_j p_j(x), densities given on the log scale.
double odp_statistic(const Eigen::VectorXd& x,
                     std::span<const LogDensity> null_log_densities,
                     std::span<const LogDensity> alt_log_densities);

// E_k = s(X_k) with the one shared statistic s.
EVector odp_evalues(std::span<const Eigen::VectorXd> data,
                    std::span<const LogDensity> null_log_densities,
                    std::span<const LogDensity> alt_log_densities);

// (s^(1/(1-h)) min clip) / normalizer, where the normalizer is the null
// mixture mean of the numerator.
double odp_general_utility(double s, double h, double normalizer,
                           std::optional<double> clip = std::nullopt);

}  // namespace cev
