#pragma once

// Brute-force check that thresholding the optimal discovery statistic is
// undominated among all separable deciders on a finite outcome space.

#include <Eigen/Core>
#include <cmath>
#include <span>
#include <vector>

#include "cev/asymptotics/rng.hpp"
#include "cev/mixtures/odp.hpp"

namespace cev::oracle {

struct DiscreteInstance {
  std::vector<Eigen::VectorXd> nulls;  // one pmf per hypothesis
  std::vector<Eigen::VectorXd> alts;
};

inline Eigen::VectorXd random_pmf(RngStream& rng, int points) {
  Eigen::VectorXd p(points);
  for (int i = 0; i < points; ++i) p[i] = rng.exponential();
  return p / p.sum();
}

inline DiscreteInstance random_instance(RngStream& rng, int hypotheses, int points) {
  DiscreteInstance inst;
  for (int k = 0; k < hypotheses; ++k) {
    inst.nulls.push_back(random_pmf(rng, points));
    inst.alts.push_back(random_pmf(rng, points));
  }
  return inst;
}

// True when no decider beats a rule {x : s(x) >= s(t)}, i.e. has at most
// its expected false positives and strictly more expected true positives.
inline bool threshold_rules_undominated(const Eigen::VectorXd& s, const Eigen::VectorXd& fp,
                                        const Eigen::VectorXd& tp) {
  const auto points = static_cast<int>(s.size());
  const unsigned deciders = 1u << points;
  std::vector<double> all_fp(deciders), all_tp(deciders);
  for (unsigned d = 0; d < deciders; ++d) {
    for (int x = 0; x < points; ++x) {
      if (d >> x & 1u) {
        all_fp[d] += fp[x];
        all_tp[d] += tp[x];
      }
    }
  }
  for (int t = 0; t < points; ++t) {
    double thr_fp = 0.0, thr_tp = 0.0;
    for (int x = 0; x < points; ++x) {
      if (s[x] >= s[t]) {
        thr_fp += fp[x];
        thr_tp += tp[x];
      }
    }
    for (unsigned d = 0; d < deciders; ++d) {
      if (all_fp[d] <= thr_fp + 1e-12 && all_tp[d] > thr_tp + 1e-12) return false;
    }
  }
  return true;
}

// Summed null and alternative masses per outcome.
inline void outcome_masses(const DiscreteInstance& inst, Eigen::VectorXd& fp, Eigen::VectorXd& tp) {
  fp = Eigen::VectorXd::Zero(inst.nulls.front().size());
  tp = fp;
  for (std::size_t k = 0; k < inst.nulls.size(); ++k) {
    fp += inst.nulls[k];
    tp += inst.alts[k];
  }
}

inline Eigen::VectorXd odp_on_outcomes(const DiscreteInstance& inst) {
  auto log_pmf = [](const Eigen::VectorXd& pmf) -> LogDensity {
    return [pmf](const Eigen::VectorXd& x) { return std::log(pmf[static_cast<Eigen::Index>(x[0])]); };
  };
  std::vector<LogDensity> null_ld, alt_ld;
  for (const auto& p : inst.nulls) null_ld.push_back(log_pmf(p));
  for (const auto& q : inst.alts) alt_ld.push_back(log_pmf(q));
  const auto points = inst.nulls.front().size();
  Eigen::VectorXd s(points);
  for (Eigen::Index x = 0; x < points; ++x) {
    s[x] = odp_statistic(Eigen::VectorXd::Constant(1, static_cast<double>(x)), null_ld, alt_ld);
  }
  return s;
}

inline bool thresholding_undominated(const DiscreteInstance& inst) {
  Eigen::VectorXd fp, tp;
  outcome_masses(inst, fp, tp);
  return threshold_rules_undominated(odp_on_outcomes(inst), fp, tp);
}

}  // namespace cev::oracle
