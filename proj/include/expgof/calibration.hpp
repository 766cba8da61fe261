#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "expgof/statistics.hpp"

namespace expgof {

// Empirical null quantiles of a statistic for one sample size. Replicate r is
// drawn from RngStream(seed, r), so a table is reproducible from its fields.
struct NullCalibration {
  StatisticId statistic;
  std::size_t n = 0;
  std::vector<double> alphas;       // ascending
  std::vector<double> critical;     // critical[k] is the (1 - alphas[k]) quantile
  std::vector<double> se;           // sqrt(alpha (1 - alpha) / replicates)
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<double> null_sorted;  // kept in memory only; empty after reading CSV

  double critical_value(double alpha) const;
};

inline constexpr std::size_t kMinCalibrationReplicates = 10000;

// Statistic values under Exp(1) for replicates [0, count).
std::vector<double> simulate_null(const StatisticId& id, std::size_t n, std::size_t count, std::uint64_t seed,
                                  unsigned threads = 0);

// Type-7 (linear interpolation) quantile of an ascending sequence.
double quantile_type7(std::span<const double> sorted, double p);

NullCalibration calibrate_critical_value(const StatisticId& id, std::size_t n, std::vector<double> alphas,
                                         std::size_t replicates, std::uint64_t seed, unsigned threads = 0);

// (1 + #{null >= observed}) / (replicates + 1).
double p_value_from_null(std::span<const double> null_values, double observed);
double p_value_mc(const StatisticId& id, std::span<const double> raw, std::size_t replicates, std::uint64_t seed,
                  unsigned threads = 0);

// Rejection frequency of `threshold` (strict exceedance) on fresh replicates.
double null_rejection_rate(const StatisticId& id, std::size_t n, double threshold, std::size_t replicates,
                           std::uint64_t seed, unsigned threads = 0);

// Critical values keyed by (statistic, n).
class CalibrationStore {
 public:
  void add(NullCalibration cal);
  const NullCalibration* find(const StatisticId& id, std::size_t n) const;
  // Throws CalibrationMissing naming the missing entry.
  double critical_value(const StatisticId& id, std::size_t n, double alpha) const;
  const std::vector<NullCalibration>& entries() const { return entries_; }

 private:
  std::vector<NullCalibration> entries_;
};

// CSV columns: statistic, a, n, alpha, critical_value, se, replicates, seed.
void write_calibration_csv(std::ostream& out, const std::vector<NullCalibration>& tables);
std::vector<NullCalibration> read_calibration_csv(std::istream& in);

}  // namespace expgof
