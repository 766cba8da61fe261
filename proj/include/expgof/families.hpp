#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "expgof/rng.hpp"

namespace expgof {

enum class FamilyId { Weibull, Gamma, HalfNormal, Uniform, Chen, LFR, EV, LogNormal, Dhillon, EMNW };

// Parametric alternative g(x; theta). Weibull and Gamma have shape 1 + theta,
// LFR and EMNW(beta) add theta-weighted perturbations of e^{-x}; these four
// reduce to Exp(1) at theta = 0. HalfNormal and Uniform ignore theta.
struct AlternativeFamily {
  FamilyId id = FamilyId::Weibull;
  double beta = 3.0;  // EMNW only

  std::string name() const;
  bool has_exponential_null() const;
  bool uses_theta() const;
  double theta_min() const;
  double theta_max() const;
  bool theta_min_inclusive() const;
  void check_theta(double theta) const;

  static AlternativeFamily parse(const std::string& text);
};

// The four families of the local efficiency study.
std::vector<AlternativeFamily> local_families();

double family_density(const AlternativeFamily& f, double x, double theta);
double family_cdf(const AlternativeFamily& f, double x, double theta);
double family_mean(const AlternativeFamily& f, double theta);

// d/dtheta of the density, cdf and mean at theta = 0. Only defined for
// families with an Exp(1) null member.
double density_theta_deriv_at_zero(const AlternativeFamily& f, double x);
double cdf_theta_deriv_at_zero(const AlternativeFamily& f, double x);
double mean_theta_deriv_at_zero(const AlternativeFamily& f);

// Quantile function; EMNW is inverted numerically.
double family_quantile(const AlternativeFamily& f, double u, double theta);

std::vector<double> sample_alternative(const AlternativeFamily& f, double theta, std::size_t n, RngStream& rng);

}  // namespace expgof
