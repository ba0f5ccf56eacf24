#include "cev/mixtures/odp.hpp"

#include <cmath>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/mixtures/likelihood.hpp"
#include "cev/mixtures/special.hpp"

namespace cev {

double odp_statistic(const Eigen::VectorXd& x,
                     std::span<const LogDensity> null_log_densities,
                     std::span<const LogDensity> alt_log_densities) {
  if (null_log_densities.empty() || alt_log_densities.empty()) {
    throw ConfigError("ODP needs at least one null and one alternative density");
  }
  Eigen::VectorXd num(static_cast<Eigen::Index>(alt_log_densities.size()));
  Eigen::VectorXd den(static_cast<Eigen::Index>(null_log_densities.size()));
  for (std::size_t j = 0; j < alt_log_densities.size(); ++j) {
    num[static_cast<Eigen::Index>(j)] = alt_log_densities[j](x);
  }
  for (std::size_t j = 0; j < null_log_densities.size(); ++j) {
    den[static_cast<Eigen::Index>(j)] = null_log_densities[j](x);
  }
  if (num.hasNaN() || den.hasNaN()) throw DomainError("density evaluated to NaN");
  return ratio_from_logs(log_sum_exp(num), log_sum_exp(den));
}

EVector odp_evalues(std::span<const Eigen::VectorXd> data,
                    std::span<const LogDensity> null_log_densities,
                    std::span<const LogDensity> alt_log_densities) {
  if (data.empty()) throw ShapeError("ODP needs at least one hypothesis");
  if (null_log_densities.size() != data.size() ||
      alt_log_densities.size() != data.size()) {
    throw ShapeError("ODP needs one null and one alternative density per hypothesis");
  }
  Eigen::VectorXd e(static_cast<Eigen::Index>(data.size()));
  for (std::size_t k = 0; k < data.size(); ++k) {
    e[static_cast<Eigen::Index>(k)] =
        odp_statistic(data[k], null_log_densities, alt_log_densities);
  }
  return EVector(std::move(e));
}

double odp_general_utility(double s, double h, double normalizer,
                           std::optional<double> clip) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("utility exponent h must lie in (0, 1)");
  if (!(normalizer > 0.0) || std::isinf(normalizer)) {
    throw DomainError("normalizer must be positive and finite");
  }
  if (std::isnan(s) || s < 0.0) throw DomainError("ODP statistic must be nonnegative");
  if (clip && !(*clip > 0.0)) throw DomainError("clip level must be positive");
  double value = std::pow(s, 1.0 / (1.0 - h));
  if (clip) value = std::min(value, *clip);
  return value / normalizer;
}

}  // namespace cev
