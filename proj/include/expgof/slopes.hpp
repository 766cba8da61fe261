#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "expgof/families.hpp"
#include "expgof/statistics.hpp"

namespace expgof {

// Local behaviour of a family at theta = 0: the density derivative g'(x; 0)
// and the mean derivative mu'(0).
struct Score {
  std::function<double(double)> density_deriv;
  double mean_deriv = 0.0;
};

Score score_of(const AlternativeFamily& family);

// Local approximate Bahadur slope of a test statistic: c*(theta) ~ c_coeff theta^2.
struct SlopeReport {
  StatisticId statistic;
  AlternativeFamily family;
  double a_T = 0.0;       // tail coefficient of the null limit
  double b_coeff = 0.0;   // theta (normal/sup limits) or theta^2 (quadratic limits) coefficient of b_T
  double c_coeff = 0.0;
  double lrt_coeff = 0.0;
  double efficiency = 0.0;
  bool flagged = false;   // efficiency above the LRT optimum
};

// Each slope_* returns the full report pieces; c_coeff is the slope coefficient.
struct SlopeParts {
  double a_T = 0.0;
  double b_coeff = 0.0;
  double c_coeff = 0.0;
};

SlopeParts slope_md(double a, const Score& score);
SlopeParts slope_ld(double a, const Score& score);
SlopeParts slope_normal_family(StatName name, const Score& score);
SlopeParts slope_j_family(StatName name, double a, const Score& score);
SlopeParts slope_l2_family(StatName name, std::optional<double> a, const Score& score);
SlopeParts slope_mp(double a, const Score& score);
SlopeParts slope_ks(const AlternativeFamily& family);

// Dispatch on the statistic; `score` defaults to the family's.
SlopeParts slope_parts(const StatisticId& id, const AlternativeFamily& family);

// Projection psi(x) = E[Psi(x, X)] of the J statistics under Exp(1).
double j_projection(StatName name, double x, double a);

// inf over lambda of KL(g_theta || Exp(lambda)).
double kl_to_exponential(const AlternativeFamily& family, double theta);

// Coefficient of theta^2 in twice the KL infimum (the LRT local slope).
double lrt_local_coefficient(const AlternativeFamily& family);

SlopeReport slope_report(const StatisticId& id, const AlternativeFamily& family);

// Efficiencies over a grid of tuning parameters, as (a, efficiency) pairs.
std::vector<std::pair<double, double>> efficiency_curve(StatName name, const AlternativeFamily& family,
                                                        const std::vector<double>& grid);
// Same with an explicit score and LRT benchmark.
std::vector<std::pair<double, double>> efficiency_curve(StatName name, const Score& score, double lrt_coeff,
                                                        const std::vector<double>& grid);

// Cached top eigenvalues shared by the slope routes.
double cached_delta_md(double a);
double cached_delta_mp(double a);
double cached_delta_l2(L2Kind kind, double a);

}  // namespace expgof
