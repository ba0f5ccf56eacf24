#include "cev/cli/io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cev/cli/csv.hpp"
#include "cev/core/errors.hpp"
#include "cev/core/format.hpp"

namespace cev::io {

namespace {

using nlohmann::json;

csv::Table load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return csv::read(in);
  } catch (const IngestionError& e) {
    throw IngestionError(path.string() + ": " + e.what(), e.line());
  }
}

double number_at(const csv::Row& row, long col, const char* what) {
  try {
    return parse_double(row.fields[static_cast<std::size_t>(col)]);
  } catch (const DomainError& e) {
    throw IngestionError(std::string(what) + ": " + e.what(), row.line);
  }
}

long require_column(const csv::Table& t, const std::string& name,
                    const std::filesystem::path& path) {
  const long c = t.column(name);
  if (c < 0) throw IngestionError(path.string() + ": missing column '" + name + "'", 1);
  return c;
}

void require_rows(const csv::Table& t, const std::filesystem::path& path) {
  if (t.rows.empty()) throw IngestionError(path.string() + ": no data rows", 2);
}

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

ValuesColumn read_values(const std::filesystem::path& path) {
  const auto t = load_table(path);
  const long vc = require_column(t, "value", path);
  const long nc = t.column("is_null");
  require_rows(t, path);
  ValuesColumn out;
  out.values.resize(static_cast<Index>(t.rows.size()));
  if (nc >= 0) out.null_mask = NullMask(static_cast<Index>(t.rows.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const double v = number_at(row, vc, "value");
    if (v < 0.0) throw IngestionError("negative value " + row.fields[static_cast<std::size_t>(vc)], row.line);
    out.values[static_cast<Index>(r)] = v;
    if (nc >= 0) {
      const auto& flag = row.fields[static_cast<std::size_t>(nc)];
      if (flag != "0" && flag != "1") {
        throw IngestionError("is_null must be 0 or 1, got '" + flag + "'", row.line);
      }
      (*out.null_mask)[static_cast<Index>(r)] = flag == "1";
    }
  }
  return out;
}

EVector read_evalues(const std::filesystem::path& path) {
  auto v = read_values(path);
  return EVector(std::move(v.values), std::move(v.null_mask));
}

PVector read_pvalues(const std::filesystem::path& path) {
  auto v = read_values(path);
  return PVector(std::move(v.values), std::move(v.null_mask));
}

std::vector<SummaryStats> read_summary(const std::filesystem::path& path) {
  const auto t = load_table(path);
  const long cx = require_column(t, "xbar", path);
  const long cs = require_column(t, "s2", path);
  const long cv = require_column(t, "sigma_hat2", path);
  const long cn = require_column(t, "n", path);
  require_rows(t, path);
  std::vector<SummaryStats> out;
  for (const auto& row : t.rows) {
    const double n = number_at(row, cn, "n");
    if (n != std::floor(n) || n < 2 || n > 1e9) {
      throw IngestionError("n must be an integer >= 2", row.line);
    }
    const double v = number_at(row, cv, "sigma_hat2");
    if (v < 0.0) throw IngestionError("negative variance", row.line);
    try {
      out.push_back(SummaryStats::checked(number_at(row, cx, "xbar"), number_at(row, cs, "s2"),
                                          v, static_cast<int>(n)));
    } catch (const DomainError& e) {
      throw IngestionError(e.what(), row.line);
    }
  }
  return out;
}

TestingProblem read_raw_matrix(const std::filesystem::path& path) {
  const auto t = load_table(path);
  require_rows(t, path);
  const auto n = static_cast<Index>(t.header.size());
  if (n < 2) throw IngestionError(path.string() + ": raw matrix needs n >= 2 columns", 1);
  Eigen::MatrixXd data(static_cast<Index>(t.rows.size()), n);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (Index i = 0; i < n; ++i) {
      const double x = number_at(t.rows[r], i, "observation");
      if (!std::isfinite(x)) throw IngestionError("observations must be finite", t.rows[r].line);
      data(static_cast<Index>(r), i) = x;
    }
  }
  return TestingProblem::from_matrix(std::move(data));
}

TestingProblem read_problem(const std::optional<std::filesystem::path>& raw,
                            const std::optional<std::filesystem::path>& summary) {
  if (!raw && !summary) throw ConfigError("need a raw matrix or a summary file");
  if (!raw) {
    TestingProblem p;
    p.stats = read_summary(*summary);
    const int n = p.stats.front().n;
    for (std::size_t k = 0; k < p.stats.size(); ++k) {
      if (p.stats[k].n != n) {
        throw IngestionError("all groups must share one sample size", k + 2);
      }
    }
    p.data.resize(static_cast<Index>(p.stats.size()), n);
    p.data.setConstant(std::nan(""));
    return p;
  }
  TestingProblem p = read_raw_matrix(*raw);
  if (summary) {
    const auto given = read_summary(*summary);
    if (given.size() != p.stats.size()) {
      throw IngestionError("summary file has " + std::to_string(given.size()) +
                               " rows but the raw matrix has " + std::to_string(p.stats.size()),
                           given.size() + 1);
    }
    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1e-12});
    };
    for (std::size_t k = 0; k < given.size(); ++k) {
      const auto& a = given[k];
      const auto& b = p.stats[k];
      if (a.n != b.n || !close(a.xbar, b.xbar) || !close(a.s2, b.s2) ||
          !close(a.sigma_hat2, b.sigma_hat2)) {
        throw IngestionError("summary statistics disagree with the raw matrix", k + 2);
      }
    }
  }
  return p;
}

Ingested ingest_data(const std::filesystem::path& path, Format format) {
  switch (format) {
    case Format::raw_matrix: return read_raw_matrix(path);
    case Format::summary_stats: return read_summary(path);
    case Format::values: return read_values(path);
  }
  throw ConfigError("unknown format");
}

std::string values_csv(const Eigen::VectorXd& values, const std::optional<NullMask>& null_mask) {
  std::ostringstream out;
  out << (null_mask ? "value,is_null\n" : "value\n");
  for (Index k = 0; k < values.size(); ++k) {
    out << format_double(values[k]);
    if (null_mask) out << ',' << ((*null_mask)[k] ? '1' : '0');
    out << '\n';
  }
  return out.str();
}

std::string summary_csv(const std::vector<SummaryStats>& stats) {
  std::ostringstream out;
  out << "xbar,s2,sigma_hat2,n\n";
  for (const auto& s : stats) {
    out << format_double(s.xbar) << ',' << format_double(s.s2) << ','
        << format_double(s.sigma_hat2) << ',' << s.n << '\n';
  }
  return out.str();
}

std::string result_json(const ProcedureResult& result) {
  json j;
  j["rejected"] = json::array();
  for (Index k : result.rejected) j["rejected"].push_back(k + 1);
  j["R"] = result.R();
  j["k_star"] = result.k_star;
  if (result.false_discoveries) j["F"] = *result.false_discoveries;
  return j.dump(2) + "\n";
}

ProcedureResult parse_result_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ProcedureResult r;
    for (const auto& k : j.at("rejected")) r.rejected.push_back(k.get<Index>() - 1);
    r.k_star = j.at("k_star").get<Index>();
    if (j.contains("F")) r.false_discoveries = j.at("F").get<Index>();
    if (j.at("R").get<Index>() != r.R()) throw ConfigError("R does not match the rejection list");
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed result JSON: ") + e.what());
  }
}

std::string result_csv(const ProcedureResult& result, const Eigen::VectorXd& values) {
  const NullMask rejected = rejection_mask(result, values.size());
  std::ostringstream out;
  out << "index,value,rejected\n";
  for (Index k = 0; k < values.size(); ++k) {
    out << k + 1 << ',' << format_double(values[k]) << ',' << (rejected[k] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string mixture_json(const DiscreteMixture& G, std::optional<double> loglik,
                         std::optional<double> gap) {
  json j;
  j["support"] = std::vector<double>(G.support().data(), G.support().data() + G.size());
  j["weights"] = std::vector<double>(G.weights().data(), G.weights().data() + G.size());
  if (loglik) j["loglik"] = finite_or_null(*loglik);
  if (gap) j["gap"] = finite_or_null(*gap);
  return j.dump(2) + "\n";
}

DiscreteMixture parse_mixture_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const auto support = j.at("support").get<std::vector<double>>();
    const auto weights = j.at("weights").get<std::vector<double>>();
    return DiscreteMixture(
        Eigen::Map<const Eigen::VectorXd>(support.data(), static_cast<Index>(support.size())),
        Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Index>(weights.size())));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed mixture JSON: ") + e.what());
  }
}

DiscreteMixture read_mixture(const std::filesystem::path& path) {
  return parse_mixture_json(read_text(path));
}

std::string mixture_csv(const DiscreteMixture& G) {
  std::ostringstream out;
  out << "support,weight\n";
  for (Index l = 0; l < G.size(); ++l) {
    out << format_double(G.support()[l]) << ',' << format_double(G.weights()[l]) << '\n';
  }
  return out.str();
}

std::string budget_json(const BudgetEstimate& b, const std::vector<ApproxBudget>& approx) {
  json j;
  j["mean_budget"] = finite_or_null(b.mean_budget);
  j["std_error"] = finite_or_null(b.std_error);
  j["replications"] = b.replications;
  if (b.trimmed_at) j["trimmed_at"] = finite_or_null(*b.trimmed_at);
  if (!approx.empty()) {
    j["approx"] = json::array();
    for (const auto& a : approx) j["approx"].push_back({{"epsilon", a.epsilon()}, {"delta", a.delta()}});
  }
  return j.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace cev::io
