#include "expgof/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "expgof/errors.hpp"
#include "expgof/io.hpp"
#include "expgof/rng.hpp"

namespace expgof {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

bool same_alpha(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y)); }

}  // namespace

double NullCalibration::critical_value(double alpha) const {
  for (std::size_t k = 0; k < alphas.size(); ++k)
    if (same_alpha(alphas[k], alpha)) return critical[k];
  std::ostringstream os;
  os << "no critical value for " << statistic.label() << " at n=" << n << ", alpha=" << alpha
     << "; run calibration (critval) for this level first";
  throw CalibrationMissing(os.str());
}

std::vector<double> simulate_null(const StatisticId& id, std::size_t n, std::size_t count, std::uint64_t seed,
                                  unsigned threads) {
  if (n < 2) throw DomainError("null simulation requires n >= 2");
  StatisticId::make(id.name, id.a);
  std::vector<double> out(count);
  const std::size_t chunk = 256;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  parallel_for(chunks, resolve_threads(static_cast<int>(threads)), [&](std::size_t c) {
    std::vector<double> x(n);
    const std::size_t end = std::min(count, (c + 1) * chunk);
    for (std::size_t r = c * chunk; r < end; ++r) {
      RngStream rng(seed, r);
      for (auto& v : x) v = rng.exponential();
      out[r] = evaluate(id, scale_sample(x));
    }
  });
  return out;
}

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of an empty sequence");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

NullCalibration calibrate_critical_value(const StatisticId& id, std::size_t n, std::vector<double> alphas,
                                         std::size_t replicates, std::uint64_t seed, unsigned threads) {
  if (n < 2) throw DomainError("calibration requires n >= 2");
  if (replicates < kMinCalibrationReplicates)
    throw DomainError("calibration requires at least 10000 replicates");
  if (alphas.empty()) throw DomainError("calibration requires at least one alpha");
  for (double a : alphas) check_alpha(a);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  NullCalibration cal;
  cal.statistic = id;
  cal.n = n;
  cal.alphas = alphas;
  cal.replicates = replicates;
  cal.seed = seed;
  cal.null_sorted = simulate_null(id, n, replicates, seed, threads);
  std::sort(cal.null_sorted.begin(), cal.null_sorted.end());
  for (double a : alphas) {
    cal.critical.push_back(quantile_type7(cal.null_sorted, 1.0 - a));
    cal.se.push_back(std::sqrt(a * (1.0 - a) / static_cast<double>(replicates)));
  }
  return cal;
}

double p_value_from_null(std::span<const double> null_values, double observed) {
  std::size_t count = 0;
  for (double v : null_values)
    if (v >= observed) ++count;
  return (1.0 + static_cast<double>(count)) / (static_cast<double>(null_values.size()) + 1.0);
}

double p_value_mc(const StatisticId& id, std::span<const double> raw, std::size_t replicates, std::uint64_t seed,
                  unsigned threads) {
  if (replicates < 1) throw DomainError("p_value_mc requires at least one replicate");
  const double observed = evaluate(id, raw);
  const auto null = simulate_null(id, raw.size(), replicates, seed, threads);
  return p_value_from_null(null, observed);
}

double null_rejection_rate(const StatisticId& id, std::size_t n, double threshold, std::size_t replicates,
                           std::uint64_t seed, unsigned threads) {
  const auto null = simulate_null(id, n, replicates, seed, threads);
  const auto rejected = std::count_if(null.begin(), null.end(), [&](double v) { return v > threshold; });
  return static_cast<double>(rejected) / static_cast<double>(replicates);
}

void CalibrationStore::add(NullCalibration cal) {
  for (auto& e : entries_) {
    if (e.statistic == cal.statistic && e.n == cal.n) {
      e = std::move(cal);
      return;
    }
  }
  entries_.push_back(std::move(cal));
}

const NullCalibration* CalibrationStore::find(const StatisticId& id, std::size_t n) const {
  for (const auto& e : entries_)
    if (e.statistic == id && e.n == n) return &e;
  return nullptr;
}

double CalibrationStore::critical_value(const StatisticId& id, std::size_t n, double alpha) const {
  const NullCalibration* cal = find(id, n);
  if (!cal) {
    std::ostringstream os;
    os << "no calibration for " << id.label() << " at n=" << n << "; run calibration (critval) first";
    throw CalibrationMissing(os.str());
  }
  return cal->critical_value(alpha);
}

void write_calibration_csv(std::ostream& out, const std::vector<NullCalibration>& tables) {
  CsvWriter csv(out, {"statistic", "a", "n", "alpha", "critical_value", "se", "replicates", "seed"});
  for (const auto& t : tables)
    for (std::size_t k = 0; k < t.alphas.size(); ++k)
      csv.row({stat_name(t.statistic.name), t.statistic.a ? format_real(*t.statistic.a) : std::string("NA"),
               std::to_string(t.n), format_real(t.alphas[k]), format_real(t.critical[k]), format_real(t.se[k]),
               std::to_string(t.replicates), std::to_string(t.seed)});
}

std::vector<NullCalibration> read_calibration_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::vector<std::string> need{"statistic", "a", "n", "alpha", "critical_value", "se", "replicates", "seed"};
  for (const auto& col : need)
    if (table.column(col) < 0) throw DomainError("calibration CSV lacks column '" + col + "'");
  std::vector<NullCalibration> out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto get = [&](const std::string& col) { return table.rows[r][static_cast<std::size_t>(table.column(col))]; };
    const StatName name = parse_stat_name(get("statistic"));
    std::optional<double> a;
    if (get("a") != "NA" && !get("a").empty()) a = parse_real(get("a"), "a");
    const StatisticId id = StatisticId::make(name, a);
    const auto n = static_cast<std::size_t>(parse_real(get("n"), "n"));
    const auto reps = static_cast<std::size_t>(parse_real(get("replicates"), "replicates"));
    const auto seed = static_cast<std::uint64_t>(std::stoull(get("seed")));
    NullCalibration* cal = nullptr;
    for (auto& c : out)
      if (c.statistic == id && c.n == n && c.replicates == reps && c.seed == seed) cal = &c;
    if (!cal) {
      out.push_back({});
      cal = &out.back();
      cal->statistic = id;
      cal->n = n;
      cal->replicates = reps;
      cal->seed = seed;
    }
    cal->alphas.push_back(parse_real(get("alpha"), "alpha"));
    cal->critical.push_back(parse_real(get("critical_value"), "critical_value"));
    cal->se.push_back(parse_real(get("se"), "se"));
  }
  return out;
}

}  // namespace expgof
