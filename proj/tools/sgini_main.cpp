// sgini: point estimates, confidence intervals, hypothesis tests and
// Monte-Carlo studies for S-Gini income-inequality indices.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "sgini/bootstrap.hpp"
#include "sgini/csv.hpp"
#include "sgini/empirical_likelihood.hpp"
#include "sgini/errors.hpp"
#include "sgini/estimators.hpp"
#include "sgini/jackknife_el.hpp"
#include "sgini/simulation.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sgini;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::insufficient_sample: return "insufficient_sample";
    case ErrorKind::oracle_size: return "oracle_size";
    case ErrorKind::calibration: return "calibration";
    case ErrorKind::data: return "data";
  }
  return "unknown";
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << "error kind=" << kind << " message=\"" << message << "\"\n";
  return code;
}

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_cell(const ordered_json& v, bool full_precision) {
  if (v.is_null()) return full_precision ? "" : "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  return full_precision ? format_full(v.get<double>()) : format_fixed(v.get<double>());
}

// Renders an array of flat objects as an aligned table, CSV, or JSON.
void emit(const std::vector<ordered_json>& rows, const std::string& format) {
  if (format == "json") {
    ordered_json out = ordered_json::array();
    for (const auto& row : rows) out.push_back(row);
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (rows.empty()) return;

  std::vector<std::string> keys;
  for (const auto& item : rows.front().items()) keys.push_back(item.key());

  if (format == "csv") {
    for (std::size_t k = 0; k < keys.size(); ++k) {
      std::cout << (k ? "," : "") << keys[k];
    }
    std::cout << "\n";
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < keys.size(); ++k) {
        std::cout << (k ? "," : "") << render_cell(row.at(keys[k]), true);
      }
      std::cout << "\n";
    }
    return;
  }

  std::vector<std::size_t> widths(keys.size());
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (std::size_t k = 0; k < keys.size(); ++k) widths[k] = keys[k].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      line.push_back(render_cell(row.at(keys[k]), false));
      widths[k] = std::max(widths[k], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  for (std::size_t k = 0; k < keys.size(); ++k) {
    std::printf("%-*s%s", static_cast<int>(widths[k]), keys[k].c_str(),
                k + 1 < keys.size() ? "  " : "\n");
  }
  for (const auto& line : cells) {
    for (std::size_t k = 0; k < keys.size(); ++k) {
      std::printf("%-*s%s", static_cast<int>(widths[k]), line[k].c_str(),
                  k + 1 < keys.size() ? "  " : "\n");
    }
  }
}

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("SGINI_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw UsageError("SGINI_SEED is not an unsigned integer");
    }
    return v;
  }
  return 1;
}

CiMethod parse_method(const std::string& name) {
  if (name == "el") return CiMethod::el;
  if (name == "jel") return CiMethod::jel;
  if (name == "boot-t" || name == "boot_t") return CiMethod::boot_t;
  if (name == "bcel") return CiMethod::bcel;
  throw UsageError("unknown method '" + name + "'");
}

DistributionSpec parse_family(const std::string& family, const std::string& params) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= params.size()) {
    const std::size_t comma = params.find(',', start);
    const std::string cell =
        params.substr(start, comma == std::string::npos ? comma : comma - start);
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
      throw UsageError("bad --params entry '" + cell + "'");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (family == "exp" || family == "exponential") {
    if (values.size() != 1) throw UsageError("exponential takes --params RATE");
    return DistributionSpec::exponential(values[0]);
  }
  if (family == "pareto") {
    if (values.size() != 2) throw UsageError("pareto takes --params SCALE,SHAPE");
    return DistributionSpec::pareto(values[0], values[1]);
  }
  if (family == "lognormal") {
    if (values.size() != 2) throw UsageError("lognormal takes --params MU,SIGMA_SQ");
    return DistributionSpec::lognormal(values[0], values[1]);
  }
  throw UsageError("unknown family '" + family + "'");
}

struct DataArgs {
  std::string path;
  std::string value_column;
  std::string group_column;
};

void add_data_options(CLI::App* cmd, DataArgs* args) {
  cmd->add_option("--data", args->path, "CSV file with a header row")->required();
  cmd->add_option("--value-column", args->value_column, "column holding the values")->required();
  cmd->add_option("--group-column", args->group_column,
                  "optional column splitting rows into groups");
}

int run_estimate(const DataArgs& data, double nu, const std::string& format) {
  const DataFile file = load_csv(data.path, data.value_column, data.group_column);
  const SGiniOrder order(nu);

  std::vector<ordered_json> rows;
  for (const DataGroup& group : file.groups) {
    ordered_json row;
    row["group"] = group.label;
    row["n"] = static_cast<long long>(group.sample.size());
    row["mean"] = group.sample.mean();
    const EstimateResult plug = plug_in_estimate(group.sample, order);
    row["plugin_absolute"] = plug.absolute;
    row["plugin_relative"] = plug.relative;
    if (order.is_integer() && group.sample.size() >= order.integer_order()) {
      const EstimateResult ust = ustat_estimate(group.sample, order);
      row["ustat_absolute"] = ust.absolute;
      row["ustat_relative"] = ust.relative;
    } else {
      row["ustat_absolute"] = nullptr;
      row["ustat_relative"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  emit(rows, format);
  return 0;
}

int run_ci(const DataArgs& data, double nu, const std::string& method_name, double level,
           std::uint64_t seed, int outer_b, int inner_b, int threads, const std::string& format) {
  const DataFile file = load_csv(data.path, data.value_column, data.group_column);
  const SGiniOrder order(nu);
  const CiMethod method = parse_method(method_name);

  BootstrapConfig config;
  config.outer_b = outer_b;
  config.inner_b = inner_b;
  config.seed = seed;
  config.threads = threads;

  std::vector<ordered_json> rows;
  for (const DataGroup& group : file.groups) {
    IntervalResult ci{0, 0, method, level, {}};
    switch (method) {
      case CiMethod::el: ci = el_interval(group.sample, order, level); break;
      case CiMethod::jel: ci = jel_interval(group.sample, order, level); break;
      case CiMethod::boot_t: ci = boot_t_interval(group.sample, order, level, config); break;
      case CiMethod::bcel: ci = bcel_interval(group.sample, order, level, config); break;
    }
    ordered_json row;
    row["group"] = group.label;
    row["estimate"] = ci.diagnostics.center;
    row["lower"] = ci.lower;
    row["upper"] = ci.upper;
    row["length"] = ci.length();
    rows.push_back(std::move(row));
  }
  emit(rows, format);
  return 0;
}

int run_test(const DataArgs& data, double nu, double r0, double level, const std::string& format) {
  const DataFile file = load_csv(data.path, data.value_column, data.group_column);
  const SGiniOrder order(nu);

  std::vector<ordered_json> rows;
  for (const DataGroup& group : file.groups) {
    const JELTestResult res = jel_test(group.sample, order, r0, level);
    ordered_json row;
    row["group"] = group.label;
    row["r0"] = res.r0;
    row["statistic"] = res.statistic;
    row["p_value"] = res.p_value;
    row["reject"] = res.reject;
    rows.push_back(std::move(row));
  }
  emit(rows, format);
  return 0;
}

ordered_json report_row(const SimReport& report) {
  ordered_json row;
  row["method"] = report.method;
  row["family"] = report.family;
  row["params"] = report.params;
  row["nu"] = report.nu;
  row["n"] = report.n;
  row["level"] = report.level;
  if (std::isnan(report.coverage)) {
    row["coverage"] = nullptr;
  } else {
    row["coverage"] = report.coverage;
  }
  if (std::isnan(report.avg_length)) {
    row["avg_length"] = nullptr;
  } else {
    row["avg_length"] = report.avg_length;
  }
  if (std::isnan(report.rejection_rate)) {
    row["rejection_rate"] = nullptr;
  } else {
    row["rejection_rate"] = report.rejection_rate;
  }
  row["replicates"] = report.replicates;
  row["seed"] = report.seed;
  return row;
}

int run_simulate(const std::string& family, const std::string& params, double nu, int n, int reps,
                 const std::string& study, const std::string& method_name, double r0, bool has_r0,
                 double level, bool has_level, std::uint64_t seed, int outer_b, int inner_b,
                 int threads, const std::string& format) {
  const DistributionSpec dist = parse_family(family, params);
  const SGiniOrder order(nu);

  StudyConfig config;
  config.replicates = reps;
  config.seed = seed;
  config.threads = threads;
  config.bootstrap.outer_b = outer_b;
  config.bootstrap.inner_b = inner_b;

  SimReport report;
  if (study == "coverage") {
    report = coverage_study(dist, order, n, has_level ? level : 0.95, parse_method(method_name),
                            config);
  } else if (study == "type1") {
    report = type1_power_study(dist, order, n, true_r_nu(dist, order), has_level ? level : 0.05,
                               config);
  } else if (study == "power") {
    if (!has_r0) throw UsageError("--r0 is required for a power study");
    report = type1_power_study(dist, order, n, r0, has_level ? level : 0.05, config);
  } else {
    throw UsageError("unknown study '" + study + "'");
  }

  if (report.flagged) {
    std::cerr << "warning: " << report.failures << " of " << report.replicates
              << " replicates failed calibration\n";
  }
  emit({report_row(report)}, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-Gini index estimation, confidence intervals, tests and simulation studies"};
  app.require_subcommand(1);

  const int default_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::string format = "table";
  DataArgs data;
  double nu = 2.0;
  std::string method = "jel";
  double level = 0.95;
  std::uint64_t seed = 0;
  int outer_b = 1000;
  int inner_b = 50;
  int threads = default_threads;
  double r0 = 0.0;

  std::string family;
  std::string params = "1";
  int sim_n = 80;
  int reps = 1000;
  std::string study = "coverage";

  auto* estimate = app.add_subcommand("estimate", "plug-in and U-statistic index estimates");
  add_data_options(estimate, &data);
  estimate->add_option("--nu", nu, "index order (integer >= 2 enables the U-statistic path)");
  estimate->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}));

  auto* ci = app.add_subcommand("ci", "confidence interval for the relative index");
  add_data_options(ci, &data);
  ci->add_option("--nu", nu, "index order");
  ci->add_option("--method", method)->check(CLI::IsMember({"el", "jel", "boot-t", "bcel"}));
  ci->add_option("--level", level, "confidence level (default 0.95)");
  auto* ci_seed = ci->add_option("--seed", seed, "bootstrap seed (default: SGINI_SEED or 1)");
  ci->add_option("--outer-b", outer_b, "bootstrap replicates");
  ci->add_option("--inner-b", inner_b, "second-level replicates (boot-t)");
  ci->add_option("--threads", threads, "worker threads for bootstrap replicates");
  ci->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}));

  auto* test = app.add_subcommand("test", "JEL test of R_nu = r0");
  add_data_options(test, &data);
  test->add_option("--nu", nu, "index order");
  test->add_option("--r0", r0, "null value in [0, 1]")->required();
  auto* test_level = test->add_option("--level", level, "significance level (default 0.05)");
  test->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo coverage / type-1 / power studies");
  simulate->add_option("--family", family, "exp|pareto|lognormal")->required();
  simulate->add_option("--params", params, "family parameters, comma separated");
  simulate->add_option("--nu", nu, "index order");
  simulate->add_option("--n", sim_n, "sample size per replicate");
  simulate->add_option("--reps", reps, "number of replicates");
  simulate->add_option("--study", study)->check(CLI::IsMember({"coverage", "type1", "power"}));
  simulate->add_option("--method", method, "interval method for coverage studies")
      ->check(CLI::IsMember({"el", "jel", "boot-t", "bcel"}));
  auto* sim_r0 = simulate->add_option("--r0", r0, "null value for power studies");
  auto* sim_level = simulate->add_option(
      "--level", level, "confidence level (coverage) or significance level (type1/power)");
  auto* sim_seed = simulate->add_option("--seed", seed, "master seed (default: SGINI_SEED or 1)");
  simulate->add_option("--outer-b", outer_b, "bootstrap replicates");
  simulate->add_option("--inner-b", inner_b, "second-level replicates (boot-t)");
  simulate->add_option("--threads", threads, "worker threads across replicates");
  simulate->add_option("--format", format)->check(CLI::IsMember({"table", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error kind=usage message=\"" << e.what() << "\"\n";
    return 2;
  }

  try {
    if (estimate->parsed()) return run_estimate(data, nu, format);
    if (ci->parsed()) {
      return run_ci(data, nu, method, level, resolve_seed(ci_seed, seed), outer_b, inner_b,
                    threads, format);
    }
    if (test->parsed()) {
      return run_test(data, nu, r0, test_level->count() > 0 ? level : 0.05, format);
    }
    if (simulate->parsed()) {
      return run_simulate(family, params, nu, sim_n, reps, study, method, r0, sim_r0->count() > 0,
                          level, sim_level->count() > 0, resolve_seed(sim_seed, seed), outer_b,
                          inner_b, threads, format);
    }
    return fail("usage", "no subcommand given", 2);
  } catch (const UsageError& e) {
    return fail("usage", e.what(), 2);
  } catch (const DataError& e) {
    return fail("data", e.what(), 3);
  } catch (const Error& e) {
    return fail(error_kind_name(e.kind()), e.what(), 4);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 4);
  }
}
