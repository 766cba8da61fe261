#include "expgof/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "expgof/calibration.hpp"
#include "expgof/eigen.hpp"
#include "expgof/errors.hpp"
#include "expgof/io.hpp"
#include "expgof/powersim.hpp"
#include "expgof/sample.hpp"
#include "expgof/slopes.hpp"

namespace expgof {
namespace {

struct CommonConfig {
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string output;
  std::string format = "csv";
};

struct Config {
  CommonConfig common;
  std::string stat;
  std::vector<std::string> a;
  std::string family;
  std::optional<double> theta;
  std::vector<std::size_t> n;
  std::vector<double> alpha{0.05};
  std::size_t replicates = 10000;
  std::string input;
  std::string critvals;
  std::size_t cal_replicates = 10000;
  std::optional<std::uint64_t> cal_seed;
  std::size_t bootstrap = 200;
  bool table = false;
  bool layout = false;
  std::string kernel = "md";
  double ladder_tol = 1e-4;
};

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--seed", cfg.common.seed, "Random seed (echoed on stderr)");
  sub->add_option("--threads", cfg.common.threads, "Worker threads (default: EXPGOF_THREADS or all cores)");
  sub->add_option("--output", cfg.common.output, "Output file (default: stdout)");
  sub->add_option("--format", cfg.common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

template <class F>
auto flagged(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw DomainError(flag + ": " + e.what());
  }
}

std::optional<double> parse_a(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_real(text, "a");
}

StatisticId parse_statistic(const std::string& stat, const std::optional<double>& a) {
  const StatName name = flagged("--stat", [&] { return parse_stat_name(stat); });
  return flagged("--a", [&] { return StatisticId::make(name, stat_tuned(name) ? a : std::nullopt); });
}

std::optional<double> single_a(const Config& cfg) {
  if (cfg.a.size() > 1) throw DomainError("--a: expects a single value for this subcommand");
  return cfg.a.empty() ? std::nullopt : flagged("--a", [&] { return parse_a(cfg.a.front()); });
}

std::size_t single_n(const Config& cfg) {
  if (cfg.n.size() != 1) throw DomainError("--n: expects exactly one sample size");
  return cfg.n.front();
}

std::uint64_t resolve_seed(const Config& cfg, std::ostream& err) {
  std::uint64_t seed;
  if (cfg.common.seed) {
    seed = *cfg.common.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  err << "seed=" << seed << '\n';
  return seed;
}

void emit(const Config& cfg, const CsvTable& table, std::ostream& out) {
  const OutputFormat format = parse_format(cfg.common.format);
  if (cfg.common.output.empty()) {
    write_table(out, table, format);
    return;
  }
  std::ofstream file(cfg.common.output);
  if (!file) throw DomainError("--output: cannot open '" + cfg.common.output + "' for writing");
  write_table(file, table, format);
}

int cmd_test(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.input.empty()) throw DomainError("--input: a data file is required");
  const StatisticId id = parse_statistic(cfg.stat, single_a(cfg));
  const auto raw = flagged("--input", [&] { return read_sample_file(cfg.input); });
  const ScaledSample s = flagged("--input", [&] { return scale_sample(raw); });
  if (cfg.alpha.size() != 1) throw DomainError("--alpha: expects a single level");
  const std::uint64_t seed = resolve_seed(cfg, err);
  const double value = evaluate(id, s);
  const NullCalibration cal = flagged("--replicates", [&] {
    return calibrate_critical_value(id, s.size(), cfg.alpha, cfg.replicates, seed,
                                    resolve_threads(cfg.common.threads));
  });
  CsvTable t;
  t.header = {"statistic", "a", "n", "value", "alpha", "critical_value", "p_value", "replicates", "seed"};
  t.rows.push_back({stat_name(id.name), id.a ? format_real(*id.a) : "NA", std::to_string(s.size()),
                    format_real(value), format_real(cfg.alpha.front()), format_real(cal.critical.front()),
                    format_real(p_value_from_null(cal.null_sorted, value)), std::to_string(cfg.replicates),
                    std::to_string(seed)});
  emit(cfg, t, out);
  return kExitOk;
}

int cmd_critval(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.n.empty()) throw DomainError("--n: at least one sample size is required");
  const std::uint64_t seed = resolve_seed(cfg, err);
  std::vector<std::optional<double>> as;
  for (const auto& text : cfg.a) as.push_back(flagged("--a", [&] { return parse_a(text); }));
  if (as.empty()) as.push_back(std::nullopt);
  std::vector<NullCalibration> tables;
  for (const auto& a : as) {
    const StatisticId id = parse_statistic(cfg.stat, a);
    for (std::size_t n : cfg.n) {
      tables.push_back(flagged("--replicates", [&] {
        return calibrate_critical_value(id, n, cfg.alpha, cfg.replicates, seed, resolve_threads(cfg.common.threads));
      }));
    }
  }
  std::ostringstream csv;
  write_calibration_csv(csv, tables);
  std::istringstream in(csv.str());
  emit(cfg, read_csv(in), out);
  return kExitOk;
}

int cmd_power(const Config& cfg, std::ostream& out, std::ostream& err) {
  const std::size_t n = single_n(cfg);
  if (cfg.alpha.size() != 1) throw DomainError("--alpha: expects a single level");
  const double alpha = cfg.alpha.front();
  const std::uint64_t seed = resolve_seed(cfg, err);
  const unsigned threads = resolve_threads(cfg.common.threads);
  BootstrapOptions boot;
  boot.B = cfg.bootstrap;

  std::vector<PowerRow> rows;
  std::vector<Alternative> alts;
  if (cfg.table) {
    rows = table_rows();
    alts = table_alternatives();
    if (!cfg.stat.empty()) {
      const StatName only = flagged("--stat", [&] { return parse_stat_name(cfg.stat); });
      std::erase_if(rows, [&](const PowerRow& r) { return r.name != only; });
    }
  } else {
    const StatName name = flagged("--stat", [&] { return parse_stat_name(cfg.stat); });
    if (name != StatName::MD && name != StatName::LD && cfg.a.size() == 1 && cfg.a.front() == "hat")
      throw DomainError("--a: 'hat' is only available for MD and LD");
    if (cfg.a.size() == 1 && cfg.a.front() == "hat") {
      rows.push_back({name, std::nullopt});
    } else {
      const StatisticId id = parse_statistic(cfg.stat, single_a(cfg));
      rows.push_back({id.name, id.a});
    }
    if (cfg.family.empty()) throw DomainError("--family: an alternative family is required");
    alts.push_back(flagged("--family", [&] { return parse_alternative(cfg.family, cfg.theta); }));
  }

  CalibrationStore store;
  if (!cfg.critvals.empty()) {
    std::ifstream in(cfg.critvals);
    if (!in) throw DomainError("--critvals: cannot open '" + cfg.critvals + "'");
    for (auto& c : flagged("--critvals", [&] { return read_calibration_csv(in); })) store.add(std::move(c));
  } else {
    const std::uint64_t cal_seed = cfg.cal_seed.value_or(seed);
    err << "calibrating in-process: replicates=" << cfg.cal_replicates << " cal_seed=" << cal_seed << '\n';
    for (const auto& id : required_calibrations(rows, boot))
      store.add(flagged("--cal-replicates", [&] {
        return calibrate_critical_value(id, n, {alpha}, cfg.cal_replicates, cal_seed, threads);
      }));
  }

  std::vector<PowerCell> cells;
  for (const auto& row : rows)
    for (const auto& alt : alts)
      cells.push_back(estimate_power(store, row, alt, n, alpha, cfg.replicates, seed, boot, threads));
  emit(cfg, cfg.layout ? power_matrix(cells) : power_table(cells), out);
  return kExitOk;
}

int cmd_efficiency(const Config& cfg, std::ostream& out, std::ostream& err) {
  resolve_seed(cfg, err);
  std::vector<StatName> names;
  if (cfg.stat.empty() || cfg.stat == "all")
    names = all_stat_names();
  else
    names.push_back(flagged("--stat", [&] { return parse_stat_name(cfg.stat); }));
  std::vector<AlternativeFamily> families;
  if (cfg.family.empty() || cfg.family == "all")
    families = local_families();
  else
    families.push_back(flagged("--family", [&] { return AlternativeFamily::parse(cfg.family); }));
  for (const auto& f : families)
    if (!f.has_exponential_null())
      throw UnsupportedError("--family: " + f.name() + " has no Exp(1) member; use weibull, gamma, lfr or emnw");
  std::vector<double> grid;
  for (const auto& text : cfg.a) grid.push_back(flagged("--a", [&] { return parse_real(text, "a"); }));
  if (grid.empty()) grid = {0.2, 0.5, 1.0, 2.0, 5.0, 10.0};

  CsvTable t;
  t.header = {"statistic", "a", "family", "a_T", "b_coeff", "c_coeff", "lrt_coeff", "efficiency", "flagged"};
  for (StatName name : names) {
    std::vector<std::optional<double>> as;
    if (stat_tuned(name))
      for (double a : grid) as.push_back(a);
    else
      as.push_back(std::nullopt);
    for (const auto& a : as) {
      const StatisticId id = flagged("--a", [&] { return StatisticId::make(name, a); });
      for (const auto& f : families) {
        const SlopeReport r = slope_report(id, f);
        t.rows.push_back({stat_name(name), a ? format_real(*a) : "NA", f.name(), format_real(r.a_T),
                          format_real(r.b_coeff), format_real(r.c_coeff), format_real(r.lrt_coeff),
                          format_real(r.efficiency), r.flagged ? "1" : "0"});
      }
    }
  }
  emit(cfg, t, out);
  return kExitOk;
}

int cmd_eigen(const Config& cfg, std::ostream& out, std::ostream& err) {
  resolve_seed(cfg, err);
  if (!(cfg.ladder_tol > 0.0)) throw DomainError("--tol: must be positive");
  LadderOptions opts;
  opts.rel_tol = cfg.ladder_tol;
  std::vector<double> grid;
  for (const auto& text : cfg.a) grid.push_back(flagged("--a", [&] { return parse_real(text, "a"); }));
  if (grid.empty()) grid = {0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  CsvTable t;
  t.header = {"kernel", "a", "m", "B", "delta", "extrapolated", "final"};
  for (double a : grid) {
    LadderResult res;
    std::string kernel = cfg.kernel;
    for (auto& ch : kernel) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (kernel == "md") {
      res = largest_eigenvalue_delta1(a, opts);
    } else if (kernel == "mp") {
      res = largest_eigenvalue_mp(a, opts);
    } else {
      const auto l2 = as_l2(flagged("--kernel", [&] { return parse_stat_name(cfg.kernel); }));
      if (!l2) throw DomainError("--kernel: expected md, mp or an L2 statistic name");
      res = largest_eigenvalue_l2(*l2, a, opts);
    }
    for (const auto& r : res.trace)
      t.rows.push_back({kernel, format_real(a), std::to_string(r.m), format_real(r.B), format_real(r.delta),
                        format_real(r.extrapolated), format_real(res.value)});
  }
  emit(cfg, t, out);
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponentiality tests from V-empirical Laplace transforms"};
  app.require_subcommand(1);
  Config cfg;

  auto* test = app.add_subcommand("test", "Evaluate a statistic on a data file with its critical value and p-value");
  test->add_option("--stat", cfg.stat, "Statistic name")->required();
  test->add_option("--a", cfg.a, "Tuning parameter");
  test->add_option("--input", cfg.input, "Data file: one positive real per line")->required();
  test->add_option("--alpha", cfg.alpha, "Significance level");
  test->add_option("--replicates", cfg.replicates, "Null Monte Carlo replicates");
  add_common(test, cfg);

  auto* critval = app.add_subcommand("critval", "Tabulate Monte Carlo critical values");
  critval->add_option("--stat", cfg.stat, "Statistic name")->required();
  critval->add_option("--a", cfg.a, "Tuning parameter(s)")->delimiter(',');
  critval->add_option("--n", cfg.n, "Sample size(s)")->delimiter(',')->required();
  critval->add_option("--alpha", cfg.alpha, "Significance level(s)")->delimiter(',');
  critval->add_option("--replicates", cfg.replicates, "Null Monte Carlo replicates");
  add_common(critval, cfg);

  auto* power = app.add_subcommand("power", "Monte Carlo power against an alternative");
  power->add_option("--stat", cfg.stat, "Statistic name (MD or LD for --table)");
  power->add_option("--a", cfg.a, "Tuning parameter, or 'hat' for the bootstrap choice");
  power->add_option("--family", cfg.family, "Alternative family");
  power->add_option("--theta", cfg.theta, "Family parameter");
  power->add_option("--n", cfg.n, "Sample size")->required();
  power->add_option("--alpha", cfg.alpha, "Significance level");
  power->add_option("--replicates", cfg.replicates, "Monte Carlo replicates");
  power->add_option("--critvals", cfg.critvals, "Critical values CSV written by critval");
  power->add_option("--cal-replicates", cfg.cal_replicates, "Replicates for in-process calibration");
  power->add_option("--cal-seed", cfg.cal_seed, "Seed for in-process calibration (default: --seed)");
  power->add_option("--bootstrap", cfg.bootstrap, "Bootstrap resamples per candidate for a = hat");
  power->add_flag("--table", cfg.table, "Run every row and alternative of the power study");
  power->add_flag("--layout", cfg.layout, "Emit rows x alternatives percentages instead of long format");
  add_common(power, cfg);

  auto* efficiency = app.add_subcommand("efficiency", "Local approximate Bahadur efficiencies");
  efficiency->add_option("--stat", cfg.stat, "Statistic name or 'all'");
  efficiency->add_option("--a", cfg.a, "Tuning parameter grid")->delimiter(',');
  efficiency->add_option("--family", cfg.family, "weibull, gamma, lfr, emnw3 or 'all'");
  add_common(efficiency, cfg);

  auto* eigen = app.add_subcommand("eigen", "Largest-eigenvalue ladder diagnostics");
  eigen->add_option("--a", cfg.a, "Tuning parameter grid")->delimiter(',');
  eigen->add_option("--kernel", cfg.kernel, "md, mp, or an L2 statistic name");
  eigen->add_option("--tol", cfg.ladder_tol, "Relative agreement required between successive extrapolants");
  add_common(eigen, cfg);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*test) return cmd_test(cfg, out, err);
    if (*critval) return cmd_critval(cfg, out, err);
    if (*power) return cmd_power(cfg, out, err);
    if (*efficiency) return cmd_efficiency(cfg, out, err);
    if (*eigen) return cmd_eigen(cfg, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace expgof
