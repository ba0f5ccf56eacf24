#include "cev/cli/app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cev/asymptotics/budget.hpp"
#include "cev/asymptotics/clt.hpp"
#include "cev/cli/io.hpp"
#include "cev/core/calibrator.hpp"
#include "cev/core/combine.hpp"
#include "cev/core/errors.hpp"
#include "cev/core/format.hpp"
#include "cev/mixtures/likelihood.hpp"
#include "cev/mixtures/npmle.hpp"
#include "cev/mixtures/ttest.hpp"
#include "cev/procedures/ebh.hpp"
#include "cev/procedures/merge.hpp"
#include "cev/procedures/universality.hpp"
#include "cev/simbench/methods.hpp"
#include "cev/simbench/study.hpp"

namespace cev {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string subcommand;

  std::string evalues;
  std::vector<std::string> evalue_files;
  std::string pvalues;
  std::string weights;
  std::string input;
  std::string summary;
  std::string raw;
  std::string mixture;
  std::string output;
  std::string values_out;
  std::string plot_data;
  std::string format = "json";

  double alpha = 0.1;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  std::string calibrator = "power";
  double kappa = 0.5;
  std::string direction = "p2e";

  double grid_lo = kDefaultGridLo;
  double grid_hi = kDefaultGridHi;
  long grid_size = kDefaultGridSize;
  std::string solver = "active_set";
  int dof = 0;

  double delta = 0.01;
  double xi = 4.0;
  std::string kind = "twice_mean";
  std::vector<double> run_weights;

  std::string construction = "lr";
  int K = 500;
  int n = 5;
  std::optional<int> n_nulls;
  std::string variance_mode = "uniform";
  long reps = 10000;
  std::vector<double> epsilon_grid;
  std::optional<double> cap;

  std::vector<double> xis = {2, 3, 4, 5, 6};
  std::vector<int> ns = {5, 10};
  std::vector<std::string> modes = {"constant", "uniform"};
  bool full_scale = false;
  std::vector<std::string> methods;
  bool K_set = false;
  bool reps_set = false;
};

template <class T>
std::function<void(const json&)> setter(T& field) {
  return [&field](const json& v) { field = v.get<T>(); };
}

// Keys of the JSON config file, named like the long flags with '_' for '-'.
void apply_config_file(RunConfig& c, const std::string& path) {
  json j;
  try {
    j = json::parse(io::read_text(path));
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");
  const std::map<std::string, std::function<void(const json&)>> setters = {
      {"evalues", setter(c.evalues)},
      {"pvalues", setter(c.pvalues)},
      {"weights", setter(c.weights)},
      {"input", setter(c.input)},
      {"summary", setter(c.summary)},
      {"raw", setter(c.raw)},
      {"mixture", setter(c.mixture)},
      {"output", setter(c.output)},
      {"values_out", setter(c.values_out)},
      {"plot_data", setter(c.plot_data)},
      {"format", setter(c.format)},
      {"alpha", setter(c.alpha)},
      {"seed", [&](const json& v) { c.seed = v.get<std::uint64_t>(); }},
      {"threads", setter(c.threads)},
      {"calibrator", setter(c.calibrator)},
      {"kappa", setter(c.kappa)},
      {"direction", setter(c.direction)},
      {"grid_lo", setter(c.grid_lo)},
      {"grid_hi", setter(c.grid_hi)},
      {"grid_size", setter(c.grid_size)},
      {"solver", setter(c.solver)},
      {"dof", setter(c.dof)},
      {"delta", setter(c.delta)},
      {"xi", setter(c.xi)},
      {"kind", setter(c.kind)},
      {"run_weights", setter(c.run_weights)},
      {"construction", setter(c.construction)},
      {"K", [&](const json& v) { c.K = v.get<int>(); c.K_set = true; }},
      {"n", setter(c.n)},
      {"n_nulls", [&](const json& v) { c.n_nulls = v.get<int>(); }},
      {"variance_mode", setter(c.variance_mode)},
      {"reps", [&](const json& v) { c.reps = v.get<long>(); c.reps_set = true; }},
      {"epsilon_grid", setter(c.epsilon_grid)},
      {"cap", [&](const json& v) { c.cap = v.get<double>(); }},
      {"xis", setter(c.xis)},
      {"ns", setter(c.ns)},
      {"modes", setter(c.modes)},
      {"full_scale", setter(c.full_scale)},
      {"methods", setter(c.methods)},
  };
  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(path + ": unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw ConfigError(path + ": bad value for '" + key + "': " + e.what());
    }
  }
}

std::string require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string("missing required --") + flag);
  return path;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
  } else {
    io::write_text(c.output, text);
  }
}

std::string procedure_output(const RunConfig& c, const ProcedureResult& r,
                             const Eigen::VectorXd& values) {
  if (c.format == "json") return io::result_json(r);
  if (c.format == "csv") return io::result_csv(r, values);
  throw ConfigError("format must be json or csv, got '" + c.format + "'");
}

ProcedureResult maybe_with_truth(ProcedureResult r, const std::optional<NullMask>& mask) {
  return mask ? with_truth(std::move(r), *mask) : r;
}

NpmleOptions npmle_options(const RunConfig& c) {
  NpmleOptions o;
  if (c.solver == "active_set") {
    o.solver = NpmleSolver::active_set;
  } else if (c.solver == "em") {
    o.solver = NpmleSolver::em;
  } else {
    throw ConfigError("solver must be active_set or em, got '" + c.solver + "'");
  }
  return o;
}

Eigen::VectorXd grid_of(const RunConfig& c) {
  return log_grid(c.grid_lo, c.grid_hi, static_cast<Index>(c.grid_size));
}

TestingProblem load_problem(const RunConfig& c) {
  if (c.raw.empty() && c.summary.empty()) {
    throw ConfigError("need --raw or --summary");
  }
  auto opt = [](const std::string& p) {
    return p.empty() ? std::nullopt : std::optional<std::filesystem::path>(p);
  };
  return io::read_problem(opt(c.raw), opt(c.summary));
}

int cmd_ebh(const RunConfig& c, std::ostream& out) {
  const EVector e = io::read_evalues(require_path(c.evalues, "evalues"));
  emit(c, out, procedure_output(c, maybe_with_truth(ebh(e, c.alpha), e.null_mask()), e.values()));
  return 0;
}

int cmd_pbh(const RunConfig& c, std::ostream& out, bool by) {
  const PVector p = io::read_pvalues(require_path(c.pvalues, "pvalues"));
  const auto r = by ? by_procedure(p, c.alpha) : pbh(p, c.alpha);
  emit(c, out, procedure_output(c, maybe_with_truth(r, p.null_mask()), p.values()));
  return 0;
}

int cmd_epbh(const RunConfig& c, std::ostream& out) {
  const PVector p = io::read_pvalues(require_path(c.pvalues, "pvalues"));
  const EVector w = io::read_evalues(require_path(c.weights, "weights"));
  const auto r = weighted_pbh(p, w, c.alpha);
  emit(c, out, procedure_output(c, maybe_with_truth(r, p.null_mask()), p.values()));
  return 0;
}

int cmd_calibrate(const RunConfig& c, std::ostream& out) {
  const auto in = io::read_values(require_path(c.input, "input"));
  if (c.direction == "e2p") {
    const PVector p = calibrate_e_to_p(EVector(in.values, in.null_mask));
    emit(c, out, io::values_csv(p.values(), p.null_mask()));
    return 0;
  }
  if (c.direction != "p2e") throw ConfigError("direction must be p2e or e2p");
  const PVector p(in.values, in.null_mask);
  Calibrator h = Calibrator::power(c.kappa);
  if (c.calibrator == "by") {
    h = Calibrator::by_step(p.size(), c.alpha);
  } else if (c.calibrator != "power") {
    throw ConfigError("calibrator must be power or by, got '" + c.calibrator + "'");
  }
  const EVector e = calibrate_p_to_e(p, h);
  emit(c, out, io::values_csv(e.values(), e.null_mask()));
  return 0;
}

std::vector<double> variance_sample(const RunConfig& c, int& nu) {
  if (!c.input.empty()) {
    if (c.dof < 1) throw ConfigError("--input needs --dof");
    nu = c.dof;
    const auto v = io::read_values(c.input).values;
    return {v.data(), v.data() + v.size()};
  }
  const TestingProblem p = load_problem(c);
  nu = p.n() - 1;
  return p.sigma_hat2();
}

int cmd_npmle(const RunConfig& c, std::ostream& out) {
  int nu = 0;
  const auto s = variance_sample(c, nu);
  const NpmleFit fit = npmle_fit(s, nu, grid_of(c), npmle_options(c));
  if (c.format == "csv") {
    emit(c, out, io::mixture_csv(fit.mixture));
  } else {
    emit(c, out, io::mixture_json(fit.mixture, fit.loglik, fit.gap));
  }
  return 0;
}

Scenario scenario_for(const RunConfig& c, const TestingProblem& p) {
  Scenario s;
  s.K = static_cast<int>(p.K());
  s.n = p.n();
  s.n_nulls = s.K;
  s.xi = c.xi;
  s.alpha = c.alpha;
  return s;
}

void write_values_out(const RunConfig& c, const EVector& e) {
  if (!c.values_out.empty()) io::write_text(c.values_out, io::values_csv(e.values(), e.null_mask()));
}

int cmd_cui(const RunConfig& c, std::ostream& out) {
  const TestingProblem p = load_problem(c);
  const Scenario s = scenario_for(c, p);
  MethodSettings settings;
  settings.grid_lo = c.grid_lo;
  settings.grid_hi = c.grid_hi;
  settings.grid_size = static_cast<Index>(c.grid_size);
  settings.cui_delta = c.delta;
  settings.npmle = npmle_options(c);
  if (!(c.delta > 0.0 && c.delta < c.alpha)) {
    throw ConfigError("--delta must lie in (0, alpha)");
  }
  auto artifacts = fit_artifacts(p, {Method::cui}, settings);
  if (artifacts.cui_infeasible) throw InfeasibleError("localization band excludes every grid distribution");
  const EVector e = method_evalues(Method::cui, p, s, artifacts);
  write_values_out(c, e);
  emit(c, out, procedure_output(c, ebh(e, c.alpha - c.delta), e.values()));
  return 0;
}

// Optimal discovery e-values with a point-mass effect and a null variance
// mixture that is either given or fitted.
int cmd_odp(const RunConfig& c, std::ostream& out) {
  const TestingProblem p = load_problem(c);
  const Scenario s = scenario_for(c, p);
  const DiscreteMixture G =
      c.mixture.empty()
          ? npmle_fit(p.sigma_hat2(), p.n() - 1, grid_of(c), npmle_options(c)).mixture
          : io::read_mixture(c.mixture);
  const auto Q = JointMixture::product(DiscreteMixture::point_mass(s.effect()), G);
  Eigen::VectorXd e(p.K());
  for (Index k = 0; k < p.K(); ++k) e[k] = bayes_factor(p.stats[static_cast<std::size_t>(k)], G, Q);
  const EVector ev(std::move(e));
  write_values_out(c, ev);
  emit(c, out, procedure_output(c, ebh(ev, c.alpha), ev.values()));
  return 0;
}

int cmd_derandomize(const RunConfig& c, std::ostream& out) {
  if (c.evalue_files.empty()) throw ConfigError("derandomize needs at least one --evalues file");
  std::vector<DerandomizationRun> runs;
  const double equal = 1.0 / static_cast<double>(c.evalue_files.size());
  if (!c.run_weights.empty() && c.run_weights.size() != c.evalue_files.size()) {
    throw ConfigError("--run-weights needs one weight per --evalues file");
  }
  for (std::size_t i = 0; i < c.evalue_files.size(); ++i) {
    runs.push_back({io::read_evalues(c.evalue_files[i]),
                    c.run_weights.empty() ? equal : c.run_weights[i], std::nullopt});
  }
  const EVector e = derandomize(runs, runs.front().e.size());
  write_values_out(c, e);
  emit(c, out, procedure_output(c, ebh(e, c.alpha), e.values()));
  return 0;
}

int cmd_merge(const RunConfig& c, std::ostream& out) {
  const PVector p = io::read_pvalues(require_path(c.pvalues, "pvalues"));
  const EVector e = io::read_evalues(require_path(c.evalues, "evalues"));
  MergeSpec spec = MergeSpec::twice_mean();
  if (c.kind == "geometric") {
    spec = MergeSpec::geometric();
  } else if (c.kind != "twice_mean") {
    throw ConfigError("merge kind must be twice_mean or geometric, got '" + c.kind + "'");
  }
  json j;
  j["merged_p"] = merge_pvalues(p, e, spec);
  j["kind"] = c.kind;
  emit(c, out, j.dump(2) + "\n");
  return 0;
}

// All-null draws from the normal model; variances are kept for the oracle
// constructions.
NullDraw<TestingProblem> null_draw(RngStream& rng, int K, int n, VarianceMode mode) {
  Eigen::MatrixXd data(K, n);
  Eigen::VectorXd sigma2(K);
  for (int k = 0; k < K; ++k) {
    sigma2[k] = mode == VarianceMode::constant ? 1.0 : rng.uniform(0.5, 2.0);
  }
  for (int k = 0; k < K; ++k) {
    const double sd = std::sqrt(sigma2[k]);
    for (int i = 0; i < n; ++i) data(k, i) = sd * rng.normal();
  }
  auto p = TestingProblem::from_matrix(std::move(data));
  p.true_sigma2 = std::move(sigma2);
  return {std::move(p), NullMask::Constant(K, true)};
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  if (c.K < 1 || c.n < 3) throw ConfigError("validate needs K >= 1 and n >= 3");
  const VarianceMode mode = parse_variance_mode(c.variance_mode);
  const double effect = c.xi / std::sqrt(static_cast<double>(c.n));
  auto gen = [&](RngStream& rng) { return null_draw(rng, c.K, c.n, mode); };
  std::function<EVector(const TestingProblem&)> construction;
  const auto H = DiscreteMixture::point_mass(effect);
  auto lr = [H](const TestingProblem& p) {
    Eigen::VectorXd e(p.K());
    for (Index k = 0; k < p.K(); ++k) {
      const auto G = DiscreteMixture::point_mass((*p.true_sigma2)[k]);
      e[k] = bayes_factor(p.stats[static_cast<std::size_t>(k)], G, JointMixture::product(H, G));
    }
    return EVector(std::move(e));
  };
  if (c.construction == "constant") {
    construction = [](const TestingProblem& p) {
      return EVector(Eigen::VectorXd::Ones(p.K()));
    };
  } else if (c.construction == "lr") {
    construction = lr;
  } else if (c.construction == "odp") {
    construction = [H](const TestingProblem& p) {
      const auto& t = *p.true_sigma2;
      const auto G = DiscreteMixture::empirical(
          std::span<const double>(t.data(), static_cast<std::size_t>(t.size())));
      const auto Q = JointMixture::product(H, G);
      Eigen::VectorXd e(p.K());
      for (Index k = 0; k < p.K(); ++k) {
        e[k] = bayes_factor(p.stats[static_cast<std::size_t>(k)], G, Q);
      }
      return EVector(std::move(e));
    };
  } else if (c.construction == "sum_of_squares") {
    construction = [](const TestingProblem& p) { return sum_of_squares_compound(p.stats); };
  } else if (c.construction == "ttest") {
    construction = [&c](const TestingProblem& p) {
      Eigen::VectorXd e(p.K());
      for (Index k = 0; k < p.K(); ++k) {
        e[k] = ttest_evalue(p.stats[static_cast<std::size_t>(k)], c.xi);
      }
      return EVector(std::move(e));
    };
  } else if (c.construction == "ebh_implied") {
    construction = [lr, &c](const TestingProblem& p) {
      return implied_compound_evalues(ebh(lr(p), c.alpha), p.K(), c.alpha);
    };
  } else {
    throw ConfigError("unknown construction '" + c.construction + "'");
  }
  MonteCarloOptions mc;
  mc.replications = c.reps;
  mc.seed = *c.seed;
  mc.threads = c.threads;
  const BudgetEstimate b = estimate_compound_budget(gen, construction, mc, c.cap);
  std::vector<ApproxBudget> approx;
  if (!c.epsilon_grid.empty()) approx = estimate_approx_budget(gen, construction, mc, c.epsilon_grid);
  emit(c, out, io::budget_json(b, approx));
  return 0;
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  std::vector<Scenario> scenarios;
  for (Scenario s : desk_scenarios(*c.seed, c.full_scale, c.xis)) {
    if (std::find(c.ns.begin(), c.ns.end(), s.n) == c.ns.end()) continue;
    if (std::find(c.modes.begin(), c.modes.end(), to_string(s.variance_mode)) == c.modes.end()) {
      continue;
    }
    if (c.K_set) {
      s.K = c.K;
      s.n_nulls = s.K * 9 / 10;
    }
    if (c.n_nulls) s.n_nulls = *c.n_nulls;
    if (c.reps_set) s.reps = static_cast<int>(c.reps);
    s.alpha = c.alpha;
    s.validate();
    scenarios.push_back(s);
  }
  for (const auto& m : c.modes) parse_variance_mode(m);
  if (scenarios.empty()) throw ConfigError("no scenarios selected");
  StudyOptions opts;
  if (!c.methods.empty()) {
    opts.methods.clear();
    for (const auto& m : c.methods) opts.methods.push_back(parse_method(m));
  }
  opts.threads = c.threads;
  const auto results = run_study(scenarios, opts);
  std::ostringstream csv;
  write_results_csv(csv, results);
  const std::string path = c.output.empty() ? "results.csv" : c.output;
  io::write_text(path, csv.str());
  if (!c.plot_data.empty()) {
    std::ostringstream plot;
    write_plot_data(plot, results);
    io::write_text(c.plot_data, plot.str());
  }
  int fallbacks = 0;
  for (const auto& r : results) fallbacks += r.cui_fallbacks;
  out << "wrote " << path << " (" << results.size() << " scenarios";
  if (fallbacks > 0) out << ", " << fallbacks << " infeasible localizations fell back to ui";
  out << ")\n";
  return 0;
}

int dispatch(const RunConfig& c, std::ostream& out) {
  if (c.threads < 1) throw ConfigError("--threads must be at least 1");
  const std::string& s = c.subcommand;
  if ((s == "simulate" || s == "validate") && !c.seed) {
    throw ConfigError(s + " requires --seed");
  }
  if (s == "ebh") return cmd_ebh(c, out);
  if (s == "pbh") return cmd_pbh(c, out, false);
  if (s == "by") return cmd_pbh(c, out, true);
  if (s == "epbh") return cmd_epbh(c, out);
  if (s == "calibrate") return cmd_calibrate(c, out);
  if (s == "npmle") return cmd_npmle(c, out);
  if (s == "cui") return cmd_cui(c, out);
  if (s == "odp") return cmd_odp(c, out);
  if (s == "derandomize") return cmd_derandomize(c, out);
  if (s == "merge") return cmd_merge(c, out);
  if (s == "validate") return cmd_validate(c, out);
  if (s == "simulate") return cmd_simulate(c, out);
  throw ConfigError("unknown subcommand '" + s + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::string config_path;
  std::uint64_t seed = 0;
  CLI::App app{"Compound e-values and e-BH multiple testing"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file whose keys override flags");
    sub->add_option("--output,-o", c.output, "Output file (default: stdout)");
    sub->add_option("--alpha", c.alpha, "Target level");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--threads", c.threads, "Worker threads");
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--grid-lo", c.grid_lo, "Smallest grid variance");
    sub->add_option("--grid-hi", c.grid_hi, "Largest grid variance");
    sub->add_option("--grid-size", c.grid_size, "Number of grid points");
    sub->add_option("--solver", c.solver, "active_set or em");
  };
  auto problem = [&](CLI::App* sub) {
    sub->add_option("--raw", c.raw, "Raw matrix CSV");
    sub->add_option("--summary", c.summary, "Summary statistics CSV");
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json or csv");
  };

  std::vector<CLI::App*> subs;
  auto add = [&](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    common(sub);
    subs.push_back(sub);
    return sub;
  };

  auto* s_ebh = add("ebh", "e-BH on a file of e-values");
  s_ebh->add_option("--evalues", c.evalues, "Values CSV of e-values");
  format(s_ebh);

  for (auto [name, desc] : {std::pair{"pbh", "Benjamini-Hochberg on p-values"},
                            std::pair{"by", "Benjamini-Yekutieli on p-values"}}) {
    auto* sub = add(name, desc);
    sub->add_option("--pvalues", c.pvalues, "Values CSV of p-values");
    format(sub);
  }

  auto* s_epbh = add("epbh", "BH on p-values divided by e-value weights");
  s_epbh->add_option("--pvalues", c.pvalues, "Values CSV of p-values");
  s_epbh->add_option("--weights", c.weights, "Values CSV of e-value weights");
  format(s_epbh);

  auto* s_cal = add("calibrate", "Convert p-values to e-values or back");
  s_cal->add_option("--input", c.input, "Values CSV");
  s_cal->add_option("--direction", c.direction, "p2e or e2p");
  s_cal->add_option("--calibrator", c.calibrator, "power or by");
  s_cal->add_option("--kappa", c.kappa, "Exponent of the power calibrator");

  auto* s_np = add("npmle", "Fit the variance mixing distribution");
  problem(s_np);
  s_np->add_option("--input", c.input, "Values CSV of sample variances");
  s_np->add_option("--dof", c.dof, "Degrees of freedom for --input");
  grid(s_np);
  format(s_np);

  auto* s_cui = add("cui", "Compound universal inference e-values and e-BH");
  problem(s_cui);
  grid(s_cui);
  s_cui->add_option("--delta", c.delta, "Localization miscoverage");
  s_cui->add_option("--xi", c.xi, "Effect size; the alternative mean is xi sigma / sqrt(n)");
  s_cui->add_option("--values-out", c.values_out, "Also write the e-values here");
  format(s_cui);

  auto* s_odp = add("odp", "Optimal discovery e-values and e-BH");
  problem(s_odp);
  grid(s_odp);
  s_odp->add_option("--mixture", c.mixture, "Variance mixture JSON (default: fitted)");
  s_odp->add_option("--xi", c.xi, "Effect size");
  s_odp->add_option("--values-out", c.values_out, "Also write the e-values here");
  format(s_odp);

  auto* s_der = add("derandomize", "Average compound e-values and apply e-BH");
  s_der->add_option("--evalues", c.evalue_files, "Values CSV per run")->expected(1, -1);
  s_der->add_option("--run-weights", c.run_weights, "Weights summing to 1");
  s_der->add_option("--values-out", c.values_out, "Also write the combined e-values");
  format(s_der);

  auto* s_merge = add("merge", "e-weighted merging of p-values");
  s_merge->add_option("--pvalues", c.pvalues, "Values CSV of p-values");
  s_merge->add_option("--evalues", c.evalues, "Values CSV of e-values");
  s_merge->add_option("--kind", c.kind, "twice_mean or geometric");

  auto* s_val = add("validate", "Monte Carlo compound budget of a construction");
  s_val->add_option("--construction", c.construction,
                    "constant, lr, odp, sum_of_squares, ttest or ebh_implied");
  auto* v_K = s_val->add_option("--K", c.K, "Hypotheses");
  s_val->add_option("--n", c.n, "Observations per hypothesis");
  s_val->add_option("--variance-mode", c.variance_mode, "constant or uniform");
  s_val->add_option("--xi", c.xi, "Effect size of the alternative");
  auto* v_reps = s_val->add_option("--reps", c.reps, "Replications");
  s_val->add_option("--epsilon-grid", c.epsilon_grid, "Slacks for approximate budgets");
  s_val->add_option("--cap", c.cap, "Truncate e-values at this level");

  auto* s_sim = add("simulate", "Run the simulation study and write results.csv");
  s_sim->add_option("--xis", c.xis, "Effect sizes");
  s_sim->add_option("--ns", c.ns, "Sample sizes");
  s_sim->add_option("--modes", c.modes, "Variance modes");
  auto* m_K = s_sim->add_option("--K", c.K, "Hypotheses per scenario");
  s_sim->add_option("--n-nulls", c.n_nulls, "Null hypotheses per scenario");
  auto* m_reps = s_sim->add_option("--reps", c.reps, "Replications per scenario");
  s_sim->add_flag("--full-scale", c.full_scale, "K = 2000 with 200 replications");
  s_sim->add_option("--methods", c.methods, "Subset of methods");
  s_sim->add_option("--plot-data", c.plot_data, "Long-format CSV per panel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    for (auto* sub : subs) {
      if (sub->parsed()) c.subcommand = sub->get_name();
    }
    for (auto* sub : subs) {
      if (sub->parsed() && sub->count("--seed") > 0) c.seed = seed;
    }
    c.K_set = v_K->count() > 0 || m_K->count() > 0;
    c.reps_set = v_reps->count() > 0 || m_reps->count() > 0;
    if (!config_path.empty()) apply_config_file(c, config_path);
    if (c.subcommand == "derandomize" && c.evalue_files.empty() && !c.evalues.empty()) {
      c.evalue_files = {c.evalues};
    }
    return dispatch(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cev
