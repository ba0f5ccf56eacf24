#pragma once

#include <Eigen/Core>
#include <span>

namespace cev {

// Finitely supported probability distribution on the real line with
// strictly increasing support.
class DiscreteMixture {
 public:
  DiscreteMixture(Eigen::VectorXd support, Eigen::VectorXd weights);

  static DiscreteMixture point_mass(double x);
  // Empirical distribution of a sample; duplicate values are merged.
  static DiscreteMixture empirical(std::span<const double> sample);

  const Eigen::VectorXd& support() const noexcept { return support_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  Eigen::Index size() const noexcept { return support_.size(); }

  // Mass on (-inf, t].
  double cdf(double t) const;

  // Throws DomainError unless the support lies in [lo, hi].
  void require_within(double lo, double hi) const;

  friend bool operator==(const DiscreteMixture&, const DiscreteMixture&);

 private:
  Eigen::VectorXd support_;
  Eigen::VectorXd weights_;
};

// Distribution over (lambda, sigma2) pairs, where the null mean is
// lambda * sigma.
class JointMixture {
 public:
  JointMixture(Eigen::VectorXd lambda, Eigen::VectorXd sigma2,
               Eigen::VectorXd weights);

  // H x G.
  static JointMixture product(const DiscreteMixture& effect,
                              const DiscreteMixture& variance);

  const Eigen::VectorXd& lambda() const noexcept { return lambda_; }
  const Eigen::VectorXd& sigma2() const noexcept { return sigma2_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  Eigen::Index size() const noexcept { return weights_.size(); }

 private:
  Eigen::VectorXd lambda_;
  Eigen::VectorXd sigma2_;
  Eigen::VectorXd weights_;
};

// B points equispaced in log scale on [lo, hi].
Eigen::VectorXd log_grid(double lo, double hi, Eigen::Index B);

inline constexpr double kDefaultGridLo = 1e-3;
inline constexpr double kDefaultGridHi = 1e3;
inline constexpr Eigen::Index kDefaultGridSize = 600;

}  // namespace cev
