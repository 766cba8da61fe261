#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "expgof/calibration.hpp"
#include "expgof/families.hpp"
#include "expgof/kernels.hpp"
#include "expgof/powersim.hpp"
#include "expgof/rng.hpp"
#include "expgof/statistics.hpp"

using namespace expgof;

namespace {

std::vector<StatisticId> every_statistic() {
  std::vector<StatisticId> ids;
  for (StatName name : all_stat_names()) {
    if (stat_tuned(name)) {
      for (double a : {0.3, 2.0}) ids.push_back(StatisticId::make(name, a));
    } else {
      ids.push_back(StatisticId::make(name));
    }
  }
  return ids;
}

std::vector<double> random_sample(RngStream& rng, std::size_t n) {
  std::vector<double> x(n);
  // Mixed shapes: exponential, uniform and heavier-tailed draws.
  for (auto& v : x) {
    const double u = rng.uniform();
    v = u < 0.4 ? rng.exponential() : (u < 0.7 ? 0.05 + 3.0 * rng.uniform() : std::exp(rng.normal()));
  }
  return x;
}

struct FamilyCase {
  AlternativeFamily family;
  double theta;
};

std::vector<FamilyCase> sampler_cases() {
  auto f = [](FamilyId id) { return AlternativeFamily{id}; };
  return {{f(FamilyId::Weibull), -0.5}, {f(FamilyId::Weibull), 0.0},     {f(FamilyId::Weibull), 0.4},
          {f(FamilyId::Gamma), -0.6},   {f(FamilyId::Gamma), 1.0},       {f(FamilyId::HalfNormal), 0.0},
          {f(FamilyId::Uniform), 0.0},  {f(FamilyId::Chen), 0.5},        {f(FamilyId::Chen), 1.5},
          {f(FamilyId::LFR), 2.0},      {f(FamilyId::LFR), 4.0},         {f(FamilyId::EV), 1.5},
          {f(FamilyId::LogNormal), 0.8}, {f(FamilyId::LogNormal), 1.5},  {f(FamilyId::Dhillon), 1.0},
          {f(FamilyId::Dhillon), 1.5},  {f(FamilyId::EMNW), 0.3}};
}

// Two-sided Kolmogorov distance of sorted values against a cdf.
template <class Cdf>
double ks_distance(std::vector<double> v, Cdf cdf) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double F = cdf(v[i]);
    d = std::max({d, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
  }
  return d;
}

}  // namespace

TEST(Property, ScaleInvariance) {
  RngStream rng(101);
  for (const auto& id : every_statistic()) {
    for (int k = 0; k < 25; ++k) {
      const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 19.0);
      const auto x = random_sample(rng, n);
      const double base = evaluate(id, x);
      for (double c : {1e-3, 0.37, 42.0, 1e4}) {
        std::vector<double> y(x);
        for (auto& v : y) v *= c;
        EXPECT_NEAR(evaluate(id, y), base, 1e-9 * std::max(1.0, std::abs(base))) << id.label() << " c=" << c;
      }
    }
  }
}

TEST(Property, PermutationInvariance) {
  RngStream rng(102);
  for (const auto& id : every_statistic()) {
    auto x = random_sample(rng, 15);
    const double base = evaluate(id, x);
    std::reverse(x.begin(), x.end());
    std::rotate(x.begin(), x.begin() + 4, x.end());
    EXPECT_NEAR(evaluate(id, x), base, 1e-10 * std::max(1.0, std::abs(base))) << id.label();
  }
}

TEST(Property, QuadraticFormsNonnegative) {
  RngStream rng(103);
  for (const auto& id : every_statistic()) {
    if (id.name == StatName::EP || id.name == StatName::CO || id.name == StatName::GINI || id.name == StatName::MO ||
        id.name == StatName::JP || id.name == StatName::JD)
      continue;  // normal limits: signed
    for (int k = 0; k < 20; ++k) EXPECT_GE(evaluate(id, random_sample(rng, 12)), -1e-12) << id.label();
  }
}

TEST(Property, KernelSymmetry) {
  RngStream rng(104);
  for (int k = 0; k < 500; ++k) {
    const double u = 4.0 * rng.exponential(), v = 4.0 * rng.exponential(), a = 0.1 + 10.0 * rng.uniform();
    EXPECT_NEAR(h2_tilde(u, v, a), h2_tilde(v, u, a), 1e-13 * std::max(1.0, std::abs(h2_tilde(u, v, a))));
    EXPECT_NEAR(h2_tilde_mp(u, v, a), h2_tilde_mp(v, u, a), 1e-13 * std::max(1.0, std::abs(h2_tilde_mp(u, v, a))));
    EXPECT_NEAR(covariance_K(u, v, a), covariance_K(v, u, a), 1e-16);
    for (L2Kind kind : {L2Kind::CVM, L2Kind::AD, L2Kind::BH, L2Kind::HE, L2Kind::W, L2Kind::HM1, L2Kind::HM2}) {
      const double f = l2_kernel(kind, u, v, a);
      EXPECT_NEAR(f, l2_kernel(kind, v, u, a), 1e-12 * std::max(1.0, std::abs(f))) << l2_name(kind);
    }
  }
}

TEST(Property, SamplerMatchesCdf) {
  const std::size_t draws = 20000;
  const double critical = 1.95 / std::sqrt(static_cast<double>(draws));  // 0.1% level
  std::uint64_t seed = 200;
  for (const auto& c : sampler_cases()) {
    RngStream rng(seed++);
    const auto x = sample_alternative(c.family, c.theta, draws, rng);
    for (double v : x) ASSERT_GE(v, 0.0) << c.family.name();
    const double d = ks_distance(x, [&](double v) { return family_cdf(c.family, v, c.theta); });
    EXPECT_LT(d, critical) << c.family.name() << " theta=" << c.theta;
  }
}

TEST(Property, PValuesUniformUnderNull) {
  const std::size_t runs = 400, reps = 400, n = 15;
  const double critical = 1.95 / std::sqrt(static_cast<double>(runs)) + 1.0 / reps;
  std::uint64_t seed = 300;
  for (const auto& id : {StatisticId::make(StatName::MD, 2.0), StatisticId::make(StatName::LD, 1.0),
                         StatisticId::make(StatName::KS), StatisticId::make(StatName::EP),
                         StatisticId::make(StatName::BH, 1.0)}) {
    std::vector<double> p(runs);
    const std::uint64_t s = seed++;
    parallel_for(runs, resolve_threads(0), [&](std::size_t r) {
      RngStream data(s, r);
      std::vector<double> x(n);
      for (auto& v : x) v = 3.0 * data.exponential();
      p[r] = p_value_mc(id, x, reps, 10 * s + r, 1);
    });
    EXPECT_LT(ks_distance(p, [](double u) { return u; }), critical) << id.label();
  }
}

TEST(Property, SeedDeterminism) {
  const StatisticId id = StatisticId::make(StatName::LD, 0.5);
  EXPECT_EQ(simulate_null(id, 10, 2000, 7, 1), simulate_null(id, 10, 2000, 7, 3));
  for (const auto& c : sampler_cases()) {
    RngStream a(55, 3), b(55, 3);
    EXPECT_EQ(sample_alternative(c.family, c.theta, 50, a), sample_alternative(c.family, c.theta, 50, b));
  }
  RngStream r1(9), r2(9);
  for (int k = 0; k < 100; ++k) ASSERT_EQ(r1.uniform(), r2.uniform());
  CalibrationStore store;
  store.add(calibrate_critical_value(id, 10, {0.05}, 10000, 8, 2));
  EXPECT_EQ(store.critical_value(id, 10, 0.05),
            calibrate_critical_value(id, 10, {0.05}, 10000, 8, 1).critical_value(0.05));
  const PowerRow row{StatName::LD, 0.5};
  const Alternative alt = parse_alternative("chen", 1.0);
  EXPECT_EQ(estimate_power(store, row, alt, 10, 0.05, 1000, 4, {}, 1).power,
            estimate_power(store, row, alt, 10, 0.05, 1000, 4, {}, 3).power);
}
