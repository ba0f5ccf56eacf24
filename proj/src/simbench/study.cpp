#include "cev/simbench/study.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "cev/asymptotics/parallel.hpp"
#include "cev/core/errors.hpp"
#include "cev/core/format.hpp"

namespace cev {

namespace {

std::pair<double, double> mean_and_se(const std::vector<double>& v) {
  const auto R = static_cast<double>(v.size());
  const double mean = pairwise_sum(v) / R;
  if (v.size() < 2) return {mean, 0.0};
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
  return {mean, std::sqrt(pairwise_sum(sq) / (R - 1.0) / R)};
}

}  // namespace

MethodResult estimate_fdr_power(Method method,
                                std::span<const ProcedureResult> results,
                                const Scenario& s, bool want_power) {
  if (results.empty()) throw ConfigError("no replications to summarize");
  const int non_nulls = s.K - s.n_nulls;
  if (want_power && non_nulls == 0) {
    throw ConfigError("power is undefined without non-null hypotheses");
  }
  std::vector<double> fdp;
  std::vector<double> tpp;
  for (const auto& r : results) {
    if (!r.false_discoveries) throw ConfigError("results carry no truth");
    const auto F = static_cast<double>(*r.false_discoveries);
    const auto R = static_cast<double>(r.R());
    fdp.push_back(R > 0 ? F / R : 0.0);
    tpp.push_back(non_nulls > 0 ? (R - F) / non_nulls : 0.0);
  }
  MethodResult out;
  out.method = method;
  std::tie(out.fdr, out.fdr_se) = mean_and_se(fdp);
  std::tie(out.power, out.power_se) = mean_and_se(tpp);
  return out;
}

const MethodResult& ScenarioResult::result(Method m) const {
  for (const auto& r : methods) {
    if (r.method == m) return r;
  }
  throw ConfigError("method " + to_string(m) + " was not run");
}

std::vector<ScenarioResult> run_study(std::span<const Scenario> scenarios,
                                      const StudyOptions& options) {
  struct Task {
    std::size_t scenario;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    scenarios[i].validate();
    for (int r = 0; r < scenarios[i].reps; ++r) tasks.push_back({i, r});
  }
  const std::size_t M = options.methods.size();
  // outcome[task][method]
  std::vector<std::vector<ProcedureResult>> outcome(tasks.size());
  std::vector<char> fell_back(tasks.size(), 0);
  parallel_for(tasks.size(), options.threads, [&](std::size_t t) {
    const Scenario& s = scenarios[tasks[t].scenario];
    const TestingProblem problem = generate_scenario_data(s, tasks[t].rep);
    ReplicationArtifacts artifacts;
    try {
      artifacts = fit_artifacts(problem, options.methods, options.settings);
    } catch (const ConvergenceError& err) {
      throw ConvergenceError(s.id() + " rep " + std::to_string(tasks[t].rep) + ": " +
                                 err.what(),
                             err.gap());
    }
    fell_back[t] = artifacts.cui_infeasible ? 1 : 0;
    outcome[t].reserve(M);
    for (Method m : options.methods) {
      outcome[t].push_back(run_method(m, problem, s, artifacts, options.settings));
    }
  });

  std::vector<ScenarioResult> out(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    out[i].scenario = scenarios[i];
    out[i].replicates.assign(M, {});
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& sr = out[tasks[t].scenario];
    for (std::size_t m = 0; m < M; ++m) sr.replicates[m].push_back(std::move(outcome[t][m]));
    sr.cui_fallbacks += fell_back[t];
  }
  for (auto& sr : out) {
    for (std::size_t m = 0; m < M; ++m) {
      sr.methods.push_back(estimate_fdr_power(options.methods[m], sr.replicates[m],
                                              sr.scenario,
                                              sr.scenario.K > sr.scenario.n_nulls));
    }
  }
  return out;
}

std::vector<Scenario> desk_scenarios(std::uint64_t seed, bool full_scale,
                                     std::vector<double> xis) {
  std::vector<Scenario> out;
  for (int n : {5, 10}) {
    for (VarianceMode mode : {VarianceMode::constant, VarianceMode::uniform}) {
      for (double xi : xis) {
        Scenario s;
        s.K = full_scale ? 2000 : 500;
        s.n_nulls = s.K * 9 / 10;
        s.reps = full_scale ? 200 : 50;
        s.n = n;
        s.variance_mode = mode;
        s.xi = xi;
        s.alpha = 0.1;
        s.seed = seed;
        out.push_back(s);
      }
    }
  }
  return out;
}

void write_results_csv(std::ostream& out, std::span<const ScenarioResult> results) {
  out << kResultsHeader << '\n';
  for (const auto& sr : results) {
    const Scenario& s = sr.scenario;
    for (const auto& m : sr.methods) {
      out << s.id() << ',' << s.K << ',' << s.n << ',' << to_string(s.variance_mode) << ','
          << format_double(s.xi) << ',' << format_double(s.alpha) << ','
          << to_string(m.method) << ',' << format_double(m.fdr) << ','
          << format_double(m.fdr_se) << ',' << format_double(m.power) << ','
          << format_double(m.power_se) << '\n';
    }
  }
}

void write_plot_data(std::ostream& out, std::span<const ScenarioResult> results) {
  out << "panel,n,variance_mode,xi,method,power,power_se\n";
  for (const auto& sr : results) {
    const Scenario& s = sr.scenario;
    const std::string panel = "n" + std::to_string(s.n) + "_" + to_string(s.variance_mode);
    for (const auto& m : sr.methods) {
      out << panel << ',' << s.n << ',' << to_string(s.variance_mode) << ','
          << format_double(s.xi) << ',' << to_string(m.method) << ','
          << format_double(m.power) << ',' << format_double(m.power_se) << '\n';
    }
  }
}

}  // namespace cev
