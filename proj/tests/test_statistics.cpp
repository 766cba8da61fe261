#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "expgof/errors.hpp"
#include "expgof/numerics.hpp"
#include "expgof/rng.hpp"
#include "expgof/sample.hpp"
#include "expgof/statistics.hpp"
#include "oracles.hpp"

using namespace expgof;
using namespace expgof::oracle;

namespace {

std::vector<double> draw(std::uint64_t seed, std::size_t n) {
  RngStream rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.exponential() * (0.5 + rng.uniform());
  return v;
}

StatisticId sid(StatName name, double a = 1.0) { return StatisticId::make(name, stat_tuned(name) ? std::optional<double>(a) : std::nullopt); }

}  // namespace

TEST(StatisticId, Validation) {
  EXPECT_THROW(StatisticId::make(StatName::MD), DomainError);
  EXPECT_THROW(StatisticId::make(StatName::MD, 0.0), DomainError);
  EXPECT_THROW(StatisticId::make(StatName::MD, -1.0), DomainError);
  EXPECT_THROW(StatisticId::make(StatName::KS, 1.0), DomainError);
  EXPECT_EQ(StatisticId::make(StatName::MD, 1.0).label(), "MD(a=1)");
  EXPECT_EQ(parse_stat_name("ld"), StatName::LD);
  EXPECT_EQ(parse_stat_name("Hm2"), StatName::HM2);
  EXPECT_THROW(parse_stat_name("XYZ"), DomainError);
  EXPECT_EQ(all_stat_names().size(), 17u);
}

TEST(StatMD, ConstantSample) {
  const ScaledSample s = scale_sample(std::vector<double>(7, 2.5));
  EXPECT_NEAR(stat_md(s, 1.0), 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(stat_md(s, 2.0), 1.0 / 60.0, 1e-15);
  EXPECT_THROW(stat_md(s, 0.0), DomainError);
}

TEST(StatMD, MatchesDefiningIntegral) {
  for (std::size_t n : {2u, 6u, 11u, 20u}) {
    const ScaledSample s = scale_sample(draw(100 + n, n));
    for (double a : {0.2, 1.0, 5.0}) {
      const double q = laplace_weighted(
          [&](double t) {
            const double d = mean_exp(s.values, t) - pair_min_transform(s.values, t);
            return d * d;
          },
          a);
      EXPECT_NEAR(stat_md(s, a), q, 1e-9 * std::max(1.0, q)) << "n=" << n << " a=" << a;
    }
  }
}

TEST(VnProcess, Values) {
  const ScaledSample c = scale_sample(std::vector<double>(4, 3.0));
  EXPECT_NEAR(vn_process(c, 1.0, std::log(1.5)), 4.0 / 27.0, 1e-15);
  const ScaledSample s = scale_sample(draw(5, 13));
  EXPECT_NEAR(vn_process(s, 1.0, 1e-12), 0.0, 1e-11);
  for (double t : {0.01, 0.3, 2.0, 9.0}) {
    const double brute = (mean_exp(s.values, t) - pair_min_transform(s.values, t)) * std::exp(-0.7 * t);
    EXPECT_NEAR(vn_process(s, 0.7, t), brute, 1e-14);
  }
}

TEST(StatLD, ConstantSample) {
  const ScaledSample c = scale_sample(std::vector<double>(5, 1.0));
  const Maximum m = stat_ld_argmax(c, 1.0);
  EXPECT_NEAR(m.value, 4.0 / 27.0, 1e-14);
  EXPECT_NEAR(m.argmax, std::log(1.5), 1e-6);
  for (double a : {0.2, 2.0, 10.0}) {
    const double r = (1.0 + a) / (2.0 + a);
    EXPECT_NEAR(stat_ld(c, a), std::pow(r, 1.0 + a) - std::pow(r, 2.0 + a), 1e-14) << a;
  }
}

TEST(StatLD, DenseGridOracle) {
  const ScaledSample s = scale_sample(draw(17, 10));
  for (double a : {0.5, 2.0}) {
    const double hi = 40.0 / a, lo = 1e-4;
    double grid_max = 0.0;
    const int points = 1000000;
    for (int k = 0; k < points; ++k) {
      const double t = lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
      grid_max = std::max(grid_max, std::abs(vn_process(s, a, t)));
    }
    const double v = stat_ld(s, a);
    EXPECT_NEAR(v, grid_max, 1e-6);
    EXPECT_GE(v, grid_max - 1e-15);
  }
}

TEST(StatLD, NoMissedMaximum) {
  RngStream rng(404);
  for (int rep = 0; rep < 5; ++rep) {
    const ScaledSample s = scale_sample(draw(900 + rep, 15));
    const double a = 0.2 + 5.0 * rng.uniform();
    const double v = stat_ld(s, a);
    for (int k = 0; k < 10000; ++k) {
      const double t = 40.0 / a * rng.uniform();
      ASSERT_GE(v, std::abs(vn_process(s, a, t)) - 1e-15);
    }
  }
}

TEST(Classical, Examples) {
  const std::vector<double> c(5, 2.0);
  EXPECT_NEAR(compute_classical(StatName::CO, c), 1.0, 1e-15);
  EXPECT_NEAR(compute_classical(StatName::MO, c), 0.5772156649015329, 1e-15);
  EXPECT_NEAR(compute_classical(StatName::GINI, std::vector<double>{1.0, 1.0}), 0.5, 1e-15);
  EXPECT_NEAR(compute_classical(StatName::EP, c), std::sqrt(48.0) * (std::exp(-1.0) - 0.5), 1e-14);
  EXPECT_NEAR(compute_classical(StatName::KS, std::vector<double>{1.0}), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(compute_classical(StatName::CVM, std::vector<double>{1.0}), 1.0 / 3.0 + std::exp(-2.0) - std::exp(-1.0), 1e-15);
  EXPECT_THROW(compute_classical(StatName::GINI, std::vector<double>{1.0}), DomainError);
  EXPECT_THROW(compute_classical(StatName::MD, c), UnsupportedError);
}

TEST(Classical, KolmogorovSmirnovBruteForce) {
  const auto raw = draw(21, 30);
  const ScaledSample s = scale_sample(raw);
  // Evaluate |F_n - F| just left and right of every jump.
  double d = 0.0;
  const double n = 30.0;
  for (std::size_t i = 0; i < s.sorted.size(); ++i) {
    const double F = 1.0 - std::exp(-s.sorted[i]);
    d = std::max({d, std::abs((i + 1) / n - F), std::abs(i / n - F)});
  }
  EXPECT_NEAR(compute_classical(StatName::KS, raw), d, 1e-15);
}

TEST(Classical, CvmAndAdMatchDefiningIntegrals) {
  const auto raw = draw(31, 9);
  EXPECT_NEAR(compute_classical(StatName::CVM, raw), defining_integral(StatisticId::make(StatName::CVM), raw), 1e-10);
  EXPECT_NEAR(compute_classical(StatName::AD, raw), defining_integral(StatisticId::make(StatName::AD), raw), 1e-9);
}

TEST(LaplaceFamily, ConstantSamples) {
  const std::vector<double> c(6, 4.0);
  for (double a : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(compute_laplace_family(StatName::JD, c, a), 1.0 / (1.0 + a) - 1.0 / (2.0 + a), 1e-15);
    EXPECT_NEAR(compute_laplace_family(StatName::MP, c, a), 1.0 / a - 2.0 / (1.0 + a) + 1.0 / (2.0 + a), 1e-14);
  }
  EXPECT_THROW(compute_laplace_family(StatName::BH, c, 0.0), DomainError);
  EXPECT_THROW(compute_laplace_family(StatName::BH, std::vector<double>{1.0}, 1.0), DomainError);
}

TEST(LaplaceFamily, MatchesDefiningIntegrals) {
  const auto raw = draw(8, 8);
  for (double a : {0.5, 1.0, 4.0}) {
    for (StatName name : {StatName::W, StatName::HE, StatName::BH, StatName::HM1, StatName::HM2, StatName::MP,
                          StatName::JP, StatName::JD}) {
      const StatisticId id = StatisticId::make(name, a);
      const double q = defining_integral(id, raw);
      EXPECT_NEAR(compute_laplace_family(name, raw, a), q, 1e-9 * std::max(1.0, std::abs(q))) << id.label();
    }
  }
}

TEST(AllStatistics, ScaleInvariantAndNonNegative) {
  const auto raw = draw(55, 12);
  for (StatName name : all_stat_names()) {
    for (double a : {0.5, 2.0}) {
      const StatisticId id = sid(name, a);
      const double base = evaluate(id, raw);
      EXPECT_TRUE(std::isfinite(base)) << id.label();
      for (double c : {0.01, 1.0, 100.0}) {
        std::vector<double> scaled(raw);
        for (auto& x : scaled) x *= c;
        EXPECT_NEAR(evaluate(id, scaled), base, 1e-10 * std::max(1.0, std::abs(base))) << id.label() << " c=" << c;
      }
      if (name != StatName::EP && name != StatName::CO && name != StatName::JP && name != StatName::JD)
        EXPECT_GE(base, 0.0) << id.label();
      if (!stat_tuned(name)) break;
    }
  }
}

TEST(AllStatistics, ScaledAndRawAgree) {
  const auto raw = draw(66, 9);
  const ScaledSample s = scale_sample(raw);
  for (StatName name : all_stat_names()) {
    const StatisticId id = sid(name, 1.5);
    EXPECT_NEAR(evaluate(id, s), evaluate(id, raw), 1e-14 * std::max(1.0, std::abs(evaluate(id, s)))) << id.label();
  }
}
