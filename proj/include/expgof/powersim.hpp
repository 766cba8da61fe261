#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expgof/calibration.hpp"
#include "expgof/families.hpp"
#include "expgof/io.hpp"
#include "expgof/statistics.hpp"

namespace expgof {

// A column of the power study: a family at a fixed theta with its display label.
struct Alternative {
  AlternativeFamily family;
  double theta = 0.0;
  std::string label;
};

Alternative parse_alternative(const std::string& family, std::optional<double> theta);

// A row of the power study: a fixed-a statistic or the bootstrap-tuned â version.
struct PowerRow {
  StatName name = StatName::MD;
  std::optional<double> a;  // empty for the â row
  std::string label() const;
  bool adaptive() const { return !a.has_value(); }
};

struct PowerCell {
  PowerRow row;
  Alternative alternative;
  std::size_t n = 0;
  double alpha = 0.05;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double power = 0.0;
  double mc_se = 0.0;
};

struct BootstrapOptions {
  std::vector<double> grid{0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  std::size_t B = 200;
};

struct BootstrapTuning {
  std::vector<double> grid;
  std::size_t B = 0;
  double selected = 0.0;
  std::vector<double> scores;  // bootstrap rejection frequency per candidate
};

// Nonparametric bootstrap choice of a: the candidate with the highest
// rejection frequency over B resamples of `observed` (ties: smallest a).
BootstrapTuning bootstrap_select_a(const CalibrationStore& store, StatName name, std::span<const double> observed,
                                   const std::vector<double>& grid, std::size_t B, double alpha, RngStream& rng);

// Monte Carlo power. Replicate r samples from RngStream(seed, r).child(1).
PowerCell estimate_power(const CalibrationStore& store, const PowerRow& row, const Alternative& alt, std::size_t n,
                         double alpha, std::size_t replicates, std::uint64_t seed,
                         const BootstrapOptions& boot = {}, unsigned threads = 0);

// The 17 alternatives and 14 rows of the published power study layout.
std::vector<Alternative> table_alternatives();
std::vector<PowerRow> table_rows();

// Statistic/a pairs whose critical values a table run needs.
std::vector<StatisticId> required_calibrations(const std::vector<PowerRow>& rows, const BootstrapOptions& boot);

// Long-format CSV: statistic, a, family, theta, n, alpha, power, se,
// replicates, seed, alternative, percent.
CsvTable power_table(const std::vector<PowerCell>& cells);

// Table layout: one line per row label, one column per alternative label,
// cells are rounded percentages.
CsvTable power_matrix(const std::vector<PowerCell>& cells);

}  // namespace expgof
