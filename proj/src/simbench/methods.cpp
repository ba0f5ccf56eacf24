#include "cev/simbench/methods.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cev/core/errors.hpp"
#include "cev/mixtures/likelihood.hpp"
#include "cev/mixtures/ttest.hpp"
#include "cev/procedures/ebh.hpp"

namespace cev {

namespace {

bool uses(const std::vector<Method>& methods, std::initializer_list<Method> any) {
  return std::any_of(methods.begin(), methods.end(), [&](Method m) {
    return std::find(any.begin(), any.end(), m) != any.end();
  });
}

const NpmleFit& require_npmle(const ReplicationArtifacts& a) {
  if (!a.npmle) throw ConfigError("method needs an NPMLE fit for this replication");
  return *a.npmle;
}

Eigen::VectorXd alt_lognumerators(const TestingProblem& p, const JointMixture& Q) {
  Eigen::VectorXd out(p.K());
  for (Index k = 0; k < p.K(); ++k) {
    out[k] = log_alt_marginal(p.stats[static_cast<std::size_t>(k)], Q);
  }
  return out;
}

}  // namespace

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {Method::z_oracle, Method::eb_oracle,
                                              Method::eb,       Method::cui,
                                              Method::ttest,    Method::ui};
  return methods;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::z_oracle: return "z_oracle";
    case Method::eb_oracle: return "eb_oracle";
    case Method::eb: return "eb";
    case Method::cui: return "cui";
    case Method::ttest: return "ttest";
    case Method::ui: return "ui";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  for (Method m : all_methods()) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("unknown method '" + text + "'");
}

ReplicationArtifacts fit_artifacts(const TestingProblem& problem,
                                   const std::vector<Method>& methods,
                                   const MethodSettings& settings) {
  ReplicationArtifacts a;
  a.grid = log_grid(settings.grid_lo, settings.grid_hi, settings.grid_size);
  const int nu = problem.n() - 1;
  const auto s = problem.sigma_hat2();
  if (uses(methods, {Method::eb, Method::ui, Method::cui})) {
    a.npmle = npmle_fit(s, nu, a.grid, settings.npmle);
  }
  if (uses(methods, {Method::cui})) {
    a.localization = build_localization(s, settings.cui_delta, settings.constraint_points);
    try {
      a.cui.emplace(*a.localization, a.grid, nu);
    } catch (const InfeasibleError&) {
      a.cui_infeasible = true;
    }
  }
  return a;
}

EVector method_evalues(Method method, const TestingProblem& p, const Scenario& s,
                       ReplicationArtifacts& a) {
  const Index K = p.K();
  const auto H = DiscreteMixture::point_mass(s.effect());
  Eigen::VectorXd e(K);
  switch (method) {
    case Method::z_oracle: {
      if (!p.true_sigma2) throw ConfigError("z_oracle needs the true variances");
      for (Index k = 0; k < K; ++k) {
        const auto G = DiscreteMixture::point_mass((*p.true_sigma2)[k]);
        e[k] = bayes_factor(p.stats[static_cast<std::size_t>(k)], G,
                            JointMixture::product(H, G));
      }
      break;
    }
    case Method::eb_oracle: {
      if (!p.true_sigma2) throw ConfigError("eb_oracle needs the true variances");
      const auto& truth = *p.true_sigma2;
      const auto G = DiscreteMixture::empirical(
          std::span<const double>(truth.data(), static_cast<std::size_t>(truth.size())));
      const auto Q = JointMixture::product(H, G);
      for (Index k = 0; k < K; ++k) {
        e[k] = bayes_factor(p.stats[static_cast<std::size_t>(k)], G, Q);
      }
      break;
    }
    case Method::eb: {
      const auto& G = require_npmle(a).mixture;
      const auto Q = JointMixture::product(H, G);
      for (Index k = 0; k < K; ++k) {
        e[k] = bayes_factor(p.stats[static_cast<std::size_t>(k)], G, Q);
      }
      break;
    }
    case Method::ui: {
      const auto num = alt_lognumerators(p, JointMixture::product(H, require_npmle(a).mixture));
      for (Index k = 0; k < K; ++k) {
        e[k] = ui_evalue(p.stats[static_cast<std::size_t>(k)], num[k], a.grid);
      }
      break;
    }
    case Method::cui: {
      if (!a.cui) {
        if (a.cui_infeasible) return method_evalues(Method::ui, p, s, a);
        throw ConfigError("cui needs a localization fit for this replication");
      }
      const auto num = alt_lognumerators(p, JointMixture::product(H, require_npmle(a).mixture));
      e = a.cui->evalues(p.stats, num);
      break;
    }
    case Method::ttest: {
      for (Index k = 0; k < K; ++k) {
        e[k] = ttest_evalue(p.stats[static_cast<std::size_t>(k)], s.xi);
      }
      break;
    }
  }
  return EVector(std::move(e), p.null_mask);
}

ProcedureResult run_method(Method method, const TestingProblem& problem,
                           const Scenario& s, ReplicationArtifacts& artifacts,
                           const MethodSettings& settings) {
  try {
    const EVector e = method_evalues(method, problem, s, artifacts);
    const double level = method == Method::cui ? s.alpha - settings.cui_delta : s.alpha;
    return ebh(e, level);
  } catch (const ConvergenceError& err) {
    throw ConvergenceError(to_string(method) + ", rep " + std::to_string(problem.rep) +
                               ": " + err.what(),
                           err.gap());
  } catch (const NumericalError& err) {
    throw NumericalError(to_string(method) + ", rep " + std::to_string(problem.rep) +
                         ": " + err.what());
  }
}

}  // namespace cev
