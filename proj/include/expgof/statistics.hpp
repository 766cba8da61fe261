#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expgof/kernels.hpp"
#include "expgof/numerics.hpp"
#include "expgof/sample.hpp"

namespace expgof {

enum class StatName { MD, LD, EP, CO, GINI, MO, KS, CVM, AD, BH, HE, W, HM1, HM2, MP, JP, JD };

std::string stat_name(StatName name);
StatName parse_stat_name(const std::string& text);
bool stat_tuned(StatName name);
std::vector<StatName> all_stat_names();
std::optional<L2Kind> as_l2(StatName name);

// A statistic together with its tuning parameter, present exactly for the
// tuned statistics.
struct StatisticId {
  StatName name = StatName::MD;
  std::optional<double> a;

  static StatisticId make(StatName name, std::optional<double> a = std::nullopt);
  double tuning() const;  // throws if untuned
  std::string label() const;
  bool operator==(const StatisticId&) const = default;
};

// Integral-type statistic built from the Desu characterization.
double stat_md(const ScaledSample& s, double a);

// Weighted difference of the two V-empirical Laplace transforms at t.
double vn_process(const ScaledSample& s, double a, double t);

// Supremum-type statistic; the maximizer is reported alongside the value.
Maximum stat_ld_argmax(const ScaledSample& s, double a);
double stat_ld(const ScaledSample& s, double a);

double compute_classical(StatName name, std::span<const double> raw);
double compute_laplace_family(StatName name, std::span<const double> raw, double a);

double evaluate(const StatisticId& id, const ScaledSample& s);
double evaluate(const StatisticId& id, std::span<const double> raw);

}  // namespace expgof
