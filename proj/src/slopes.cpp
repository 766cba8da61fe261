#include "expgof/slopes.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "expgof/eigen.hpp"
#include "expgof/errors.hpp"
#include "expgof/expint.hpp"
#include "expgof/kernels.hpp"
#include "expgof/numerics.hpp"

namespace expgof {
namespace {

QuadOptions single_opts() {
  QuadOptions o;
  o.abs_tol = 1e-12;
  o.rel_tol = 1e-10;
  return o;
}

QuadOptions double_opts() {
  QuadOptions o;
  o.abs_tol = 1e-10;
  o.rel_tol = 1e-8;
  return o;
}

double cached(int tag, double a, const std::function<double()>& compute) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, double> memo;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find({tag, a});
    if (it != memo.end()) return it->second;
  }
  const double v = compute();
  std::lock_guard<std::mutex> lock(mutex);
  memo[{tag, a}] = v;
  return v;
}

// Second Richardson level for r(theta) = r0 + r1 theta + r2 theta^2 + ...
double richardson_linear(const std::function<double(double)>& r, double theta) {
  const double r1 = r(theta), r2 = r(theta / 2.0), r4 = r(theta / 4.0);
  const double e1 = 2.0 * r2 - r1, e2 = 2.0 * r4 - r2;
  return (4.0 * e2 - e1) / 3.0;
}

// Richardson table on theta, theta/2, ..., theta/2^levels eliminating the
// theta^1 .. theta^levels terms of r(theta).
double richardson_levels(const std::function<double(double)>& r, double theta, int levels) {
  std::vector<double> t;
  for (int k = 0; k <= levels; ++k) t.push_back(r(theta / std::ldexp(1.0, k)));
  for (int j = 1; j <= levels; ++j) {
    const double p = std::ldexp(1.0, j);
    for (std::size_t i = 0; i + j < t.size(); ++i) t[i] = (p * t[i + 1] - t[i]) / (p - 1.0);
  }
  return t[0];
}

double require_positive_a(std::optional<double> a, StatName name) {
  if (!a || !(*a > 0.0)) throw DomainError("statistic " + stat_name(name) + " requires a positive tuning parameter");
  return *a;
}

}  // namespace

Score score_of(const AlternativeFamily& family) {
  if (!family.has_exponential_null())
    throw UnsupportedError("family " + family.name() + " has no Exp(1) member at theta = 0");
  return {[family](double x) { return density_theta_deriv_at_zero(family, x); }, mean_theta_deriv_at_zero(family)};
}

double cached_delta_md(double a) {
  return cached(0, a, [a] { return largest_eigenvalue_delta1(a).value; });
}

double cached_delta_mp(double a) {
  return cached(1, a, [a] { return largest_eigenvalue_mp(a).value; });
}

double cached_delta_l2(L2Kind kind, double a) {
  return cached(10 + static_cast<int>(kind), l2_tuned(kind) ? a : 0.0,
                [kind, a] { return largest_eigenvalue_l2(kind, a).value; });
}

SlopeParts slope_md(double a, const Score& score) {
  if (!(a > 0.0)) throw DomainError("slope_md: a must be positive");
  const auto& g = score.density_deriv;
  const double integral =
      integrate_quadrant([&](double x, double y) { return h2_tilde(x, y, a) * g(x) * g(y); }, double_opts());
  const double delta = cached_delta_md(a);
  return {1.0 / (6.0 * delta), 6.0 * integral, integral / delta};
}

SlopeParts slope_mp(double a, const Score& score) {
  if (!(a > 0.0)) throw DomainError("slope_mp: a must be positive");
  const auto& g = score.density_deriv;
  const double integral =
      integrate_quadrant([&](double x, double y) { return h2_tilde_mp(x, y, a) * g(x) * g(y); }, double_opts());
  const double delta = cached_delta_mp(a);
  return {1.0 / (6.0 * delta), 6.0 * integral, integral / delta};
}

SlopeParts slope_ld(double a, const Score& score) {
  if (!(a > 0.0)) throw DomainError("slope_ld: a must be positive");
  const auto& g = score.density_deriv;
  const CovarianceHandle cov = sup_variance(a);
  auto drift = [&](double t) {
    return std::abs(integrate_half_line([&](double x) { return phi1_tilde(x, t, a) * g(x); }, single_opts()));
  };
  const Maximum best = maximize_scan(drift, 1e-4, 40.0 / a, 512, 1e-8, true);
  return {1.0 / cov.sup_variance, best.value, best.value * best.value / cov.sup_variance};
}

SlopeParts slope_normal_family(StatName name, const Score& score) {
  double constant = 0.0;
  std::function<double(double)> psi;
  switch (name) {
    case StatName::EP:
      constant = 3.0;
      psi = [](double x) { return 4.0 * std::exp(-x) + x; };
      break;
    case StatName::CO:
      constant = 6.0 / (kPi * kPi);
      psi = [](double x) { return (1.0 - x) * std::log(x) + (1.0 - kEulerGamma) * x; };
      break;
    case StatName::GINI:
      constant = 12.0;
      psi = [](double x) { return 2.0 * std::exp(-x) + 0.5 * x; };
      break;
    case StatName::MO:
      constant = 1.0 / (kPi * kPi / 6.0 - 1.0);
      psi = [](double x) { return std::log(x) - x; };
      break;
    default: throw UnsupportedError("slope_normal_family: " + stat_name(name) + " has no normal limit");
  }
  const auto& g = score.density_deriv;
  const double b = integrate_half_line([&](double x) { return psi(x) * g(x); }, single_opts());
  return {constant, b, constant * b * b};
}

double j_projection(StatName name, double x, double a) {
  const double ex = std::exp(-x);
  const double base = 0.5 / (x + a) - 0.5 * expint_s(a);
  if (name == StatName::JD) {
    const double pair = 0.5 * (-expint_s(0.5 * a) + ex * expint_s(0.5 * a + x)) + ex / (2.0 * x + a);
    return base - pair;
  }
  if (name == StatName::JP) {
    const double dist = expint_ei_scaled(x + a) - ex * expint_ei_scaled(a) - ex * expint_s(a);
    return base - dist;
  }
  throw UnsupportedError("j_projection: " + stat_name(name) + " is not a J statistic");
}

SlopeParts slope_j_family(StatName name, double a, const Score& score) {
  if (!(a > 0.0)) throw DomainError("slope_j_family: a must be positive");
  if (name != StatName::JD && name != StatName::JP)
    throw UnsupportedError("slope_j_family: " + stat_name(name) + " is not a J statistic");
  const auto& g = score.density_deriv;
  const auto opts = single_opts();
  const double mean = integrate_half_line([&](double x) { return j_projection(name, x, a) * std::exp(-x); }, opts);
  const double second = integrate_half_line(
      [&](double x) {
        const double p = j_projection(name, x, a);
        return p * p * std::exp(-x);
      },
      opts);
  const double var = second - mean * mean;
  const double b = integrate_half_line([&](double x) { return j_projection(name, x, a) * g(x); }, opts);
  return {1.0 / var, b, b * b / var};
}

SlopeParts slope_l2_family(StatName name, std::optional<double> a, const Score& score) {
  if (name == StatName::MP) return slope_mp(require_positive_a(a, name), score);
  const auto kind = as_l2(name);
  if (!kind) throw UnsupportedError("slope_l2_family: " + stat_name(name) + " is not an L2 statistic");
  const double tuning = l2_tuned(*kind) ? require_positive_a(a, name) : 1.0;
  // Substituting x = mu u moves the mean onto the density, so the second
  // theta-derivative of E Phi(X/mu, Y/mu) is 2 int int Phi g~' g~' with
  // g~'(u) = g'(u) + mu'(0) (1 - u) e^{-u}, the score of X/mu.
  const auto& g = score.density_deriv;
  const double mu1 = score.mean_deriv;
  auto scaled = [&](double u) { return g(u) + mu1 * (1.0 - u) * std::exp(-u); };
  auto integrand = [&](double x, double y) { return 2.0 * l2_kernel(*kind, x, y, tuning) * scaled(x) * scaled(y); };
  const double bracket = integrate_quadrant(integrand, double_opts());
  const double delta = cached_delta_l2(*kind, tuning);
  return {1.0 / delta, 0.5 * bracket, 0.5 * bracket / delta};
}

SlopeParts slope_ks(const AlternativeFamily& family) {
  if (!family.has_exponential_null())
    throw UnsupportedError("slope_ks: family " + family.name() + " has no Exp(1) member at theta = 0");
  const Maximum var = maximize_scan(
      [](double x) { return std::exp(-2.0 * x) * (std::exp(x) - x * x - 1.0); }, 1e-6, 50.0, 2048, 1e-10, true);
  const double a_ks = 1.0 / var.value;
  auto b_of = [&](double theta) {
    const double mu = family_mean(family, theta);
    auto dev = [&](double x) { return std::abs(family_cdf(family, x * mu, theta) + std::expm1(-x)); };
    return maximize_scan(dev, 1e-6, 50.0, 2048, 1e-12, true).value;
  };
  const double b1 = richardson_linear([&](double theta) { return b_of(theta) / theta; }, 0.02);
  return {a_ks, b1, a_ks * b1 * b1};
}

SlopeParts slope_parts(const StatisticId& id, const AlternativeFamily& family) {
  if (id.name == StatName::KS) return slope_ks(family);
  const Score score = score_of(family);
  switch (id.name) {
    case StatName::MD: return slope_md(id.tuning(), score);
    case StatName::LD: return slope_ld(id.tuning(), score);
    case StatName::EP:
    case StatName::CO:
    case StatName::GINI:
    case StatName::MO: return slope_normal_family(id.name, score);
    case StatName::JP:
    case StatName::JD: return slope_j_family(id.name, id.tuning(), score);
    default: return slope_l2_family(id.name, id.a, score);
  }
}

double kl_to_exponential(const AlternativeFamily& family, double theta) {
  family.check_theta(theta);
  const double mu = family_mean(family, theta);
  QuadOptions opts;
  opts.abs_tol = 1e-17;
  opts.rel_tol = 1e-12;
  opts.max_intervals = 20000;
  auto integrand = [&](double x) {
    const double h = std::exp(-x / mu) / mu;
    const double g = family_density(family, x, theta);
    if (h == 0.0) return 0.0;
    const double rho = g / h;
    if (rho == 0.0) return h;
    const double d = rho - 1.0;
    // h (rho log rho - rho + 1), with log1p only where rho is near 1
    if (std::abs(d) > 0.5) return h * (rho * std::log(rho) - d);
    return h * ((1.0 + d) * std::log1p(d) - d);
  };
  return integrate_half_line(integrand, opts);
}

double lrt_local_coefficient(const AlternativeFamily& family) {
  if (!family.has_exponential_null())
    throw UnsupportedError("lrt_local_coefficient: family " + family.name() + " has no Exp(1) member at theta = 0");
  return cached(100 + static_cast<int>(family.id), family.id == FamilyId::EMNW ? family.beta : 0.0, [&] {
    auto ratio = [&](double theta) { return 2.0 * kl_to_exponential(family, theta) / (theta * theta); };
    return richardson_levels(ratio, 0.005, 4);
  });
}

SlopeReport slope_report(const StatisticId& id, const AlternativeFamily& family) {
  const SlopeParts parts = slope_parts(id, family);
  SlopeReport r;
  r.statistic = id;
  r.family = family;
  r.a_T = parts.a_T;
  r.b_coeff = parts.b_coeff;
  r.c_coeff = parts.c_coeff;
  r.lrt_coeff = lrt_local_coefficient(family);
  r.efficiency = r.c_coeff / r.lrt_coeff;
  r.flagged = r.efficiency > 1.0;
  if (!(r.a_T > 0.0)) throw NumericalError("non-positive tail coefficient for " + id.label(), r.a_T);
  return r;
}

std::vector<std::pair<double, double>> efficiency_curve(StatName name, const Score& score, double lrt_coeff,
                                                        const std::vector<double>& grid) {
  if (!stat_tuned(name)) throw DomainError("efficiency_curve: " + stat_name(name) + " has no tuning parameter");
  std::vector<std::pair<double, double>> out;
  for (double a : grid) {
    SlopeParts p;
    switch (name) {
      case StatName::MD: p = slope_md(a, score); break;
      case StatName::LD: p = slope_ld(a, score); break;
      case StatName::JP:
      case StatName::JD: p = slope_j_family(name, a, score); break;
      default: p = slope_l2_family(name, a, score); break;
    }
    out.emplace_back(a, p.c_coeff / lrt_coeff);
  }
  return out;
}

std::vector<std::pair<double, double>> efficiency_curve(StatName name, const AlternativeFamily& family,
                                                        const std::vector<double>& grid) {
  return efficiency_curve(name, score_of(family), lrt_local_coefficient(family), grid);
}

}  // namespace expgof
