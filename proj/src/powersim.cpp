#include "expgof/powersim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expgof/errors.hpp"
#include "expgof/rng.hpp"

namespace expgof {
namespace {

std::string theta_text(double theta) {
  std::ostringstream os;
  os << theta;
  return os.str();
}

}  // namespace

Alternative parse_alternative(const std::string& family, std::optional<double> theta) {
  Alternative alt;
  alt.family = AlternativeFamily::parse(family);
  if (alt.family.uses_theta()) {
    if (!theta) throw DomainError("--theta is required for family " + alt.family.name());
    alt.theta = *theta;
    alt.family.check_theta(alt.theta);
    alt.label = alt.family.name() + "(" + theta_text(alt.theta) + ")";
  } else {
    alt.label = alt.family.name();
  }
  return alt;
}

std::string PowerRow::label() const {
  std::ostringstream os;
  os << stat_name(name) << "(a=";
  if (a)
    os << *a;
  else
    os << "hat";
  os << ")";
  return os.str();
}

BootstrapTuning bootstrap_select_a(const CalibrationStore& store, StatName name, std::span<const double> observed,
                                   const std::vector<double>& grid, std::size_t B, double alpha, RngStream& rng) {
  if (name != StatName::MD && name != StatName::LD)
    throw UnsupportedError("bootstrap_select_a supports MD and LD only");
  if (grid.empty()) throw DomainError("bootstrap_select_a: empty candidate grid");
  for (double a : grid)
    if (!(a > 0.0)) throw DomainError("bootstrap_select_a: grid values must be positive");
  if (B < 200) throw DomainError("bootstrap_select_a: B must be at least 200");
  const std::size_t n = observed.size();
  std::vector<double> crit(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k)
    crit[k] = store.critical_value(StatisticId::make(name, grid[k]), n, alpha);
  BootstrapTuning out;
  out.grid = grid;
  out.B = B;
  out.scores.assign(grid.size(), 0.0);
  std::vector<double> resample(n);
  for (std::size_t b = 0; b < B; ++b) {
    for (auto& v : resample) {
      auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      v = observed[std::min(idx, n - 1)];
    }
    const ScaledSample s = scale_sample(resample);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double value = name == StatName::MD ? stat_md(s, grid[k]) : stat_ld(s, grid[k]);
      if (value > crit[k]) out.scores[k] += 1.0;
    }
  }
  for (auto& s : out.scores) s /= static_cast<double>(B);
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (out.scores[k] > out.scores[best] || (out.scores[k] == out.scores[best] && grid[k] < grid[best])) best = k;
  }
  out.selected = grid[best];
  return out;
}

PowerCell estimate_power(const CalibrationStore& store, const PowerRow& row, const Alternative& alt, std::size_t n,
                         double alpha, std::size_t replicates, std::uint64_t seed, const BootstrapOptions& boot,
                         unsigned threads) {
  if (replicates < 1000) throw DomainError("estimate_power requires at least 1000 replicates");
  if (n < 2) throw DomainError("estimate_power requires n >= 2");
  alt.family.check_theta(alt.theta);
  double crit = 0.0;
  StatisticId id;
  if (!row.adaptive()) {
    id = StatisticId::make(row.name, row.a);
    crit = store.critical_value(id, n, alpha);
  } else {
    for (double a : boot.grid) store.critical_value(StatisticId::make(row.name, a), n, alpha);
  }
  std::vector<char> rejected(replicates, 0);
  const std::size_t chunk = 64;
  const std::size_t chunks = (replicates + chunk - 1) / chunk;
  parallel_for(chunks, resolve_threads(static_cast<int>(threads)), [&](std::size_t c) {
    const std::size_t end = std::min(replicates, (c + 1) * chunk);
    for (std::size_t r = c * chunk; r < end; ++r) {
      RngStream rng = RngStream(seed, r).child(1);
      const auto x = sample_alternative(alt.family, alt.theta, n, rng);
      if (!row.adaptive()) {
        rejected[r] = evaluate(id, x) > crit;
      } else {
        const BootstrapTuning tune = bootstrap_select_a(store, row.name, x, boot.grid, boot.B, alpha, rng);
        const StatisticId chosen = StatisticId::make(row.name, tune.selected);
        rejected[r] = evaluate(chosen, x) > store.critical_value(chosen, n, alpha);
      }
    }
  });
  const auto count = std::count(rejected.begin(), rejected.end(), 1);
  PowerCell cell;
  cell.row = row;
  cell.alternative = alt;
  cell.n = n;
  cell.alpha = alpha;
  cell.replicates = replicates;
  cell.seed = seed;
  cell.power = static_cast<double>(count) / static_cast<double>(replicates);
  cell.mc_se = std::sqrt(cell.power * (1.0 - cell.power) / static_cast<double>(replicates));
  return cell;
}

std::vector<Alternative> table_alternatives() {
  auto make = [](FamilyId id, double theta, const char* label) {
    return Alternative{AlternativeFamily{id}, theta, label};
  };
  return {make(FamilyId::Weibull, 0.0, "Exp(1)"), make(FamilyId::Weibull, 0.4, "W(1.4)"),
          make(FamilyId::Gamma, 1.0, "G(2)"),     make(FamilyId::HalfNormal, 0.0, "HN"),
          make(FamilyId::Uniform, 0.0, "U"),      make(FamilyId::Chen, 0.5, "CH(0.5)"),
          make(FamilyId::Chen, 1.0, "CH(1)"),     make(FamilyId::Chen, 1.5, "CH(1.5)"),
          make(FamilyId::LFR, 2.0, "LF(2)"),      make(FamilyId::LFR, 4.0, "LF(4)"),
          make(FamilyId::EV, 1.5, "EV(1.5)"),     make(FamilyId::LogNormal, 0.8, "LN(0.8)"),
          make(FamilyId::LogNormal, 1.5, "LN(1.5)"), make(FamilyId::Dhillon, 1.0, "DL(1)"),
          make(FamilyId::Dhillon, 1.5, "DL(1.5)"), make(FamilyId::Weibull, -0.2, "W(0.8)"),
          make(FamilyId::Gamma, -0.6, "G(0.4)")};
}

std::vector<PowerRow> table_rows() {
  std::vector<PowerRow> rows;
  for (StatName name : {StatName::MD, StatName::LD}) {
    for (double a : {0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) rows.push_back({name, a});
    rows.push_back({name, std::nullopt});
  }
  return rows;
}

std::vector<StatisticId> required_calibrations(const std::vector<PowerRow>& rows, const BootstrapOptions& boot) {
  std::vector<StatisticId> out;
  auto add = [&](StatisticId id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& r : rows) {
    if (!r.adaptive())
      add(StatisticId::make(r.name, r.a));
    else
      for (double a : boot.grid) add(StatisticId::make(r.name, a));
  }
  return out;
}

CsvTable power_table(const std::vector<PowerCell>& cells) {
  CsvTable t;
  t.header = {"statistic", "a", "family", "theta", "n", "alpha", "power", "se", "replicates", "seed",
              "alternative", "percent"};
  for (const auto& c : cells) {
    t.rows.push_back({stat_name(c.row.name), c.row.a ? format_real(*c.row.a) : std::string("hat"),
                      c.alternative.family.name(),
                      c.alternative.family.uses_theta() ? format_real(c.alternative.theta) : std::string("NA"),
                      std::to_string(c.n), format_real(c.alpha), format_real(c.power), format_real(c.mc_se),
                      std::to_string(c.replicates), std::to_string(c.seed), c.alternative.label,
                      std::to_string(static_cast<long>(std::lround(100.0 * c.power)))});
  }
  return t;
}

CsvTable power_matrix(const std::vector<PowerCell>& cells) {
  std::vector<std::string> rows, cols;
  for (const auto& c : cells) {
    if (std::find(rows.begin(), rows.end(), c.row.label()) == rows.end()) rows.push_back(c.row.label());
    if (std::find(cols.begin(), cols.end(), c.alternative.label) == cols.end()) cols.push_back(c.alternative.label);
  }
  CsvTable t;
  t.header.push_back("statistic");
  t.header.insert(t.header.end(), cols.begin(), cols.end());
  for (const auto& r : rows) {
    std::vector<std::string> line(cols.size() + 1, "NA");
    line[0] = r;
    for (const auto& c : cells) {
      if (c.row.label() != r) continue;
      const auto pos = std::find(cols.begin(), cols.end(), c.alternative.label) - cols.begin();
      line[static_cast<std::size_t>(pos) + 1] = std::to_string(static_cast<long>(std::lround(100.0 * c.power)));
    }
    t.rows.push_back(line);
  }
  return t;
}

}  // namespace expgof
