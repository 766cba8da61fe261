#include "expgof/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "expgof/errors.hpp"
#include "expgof/expint.hpp"
#include "expgof/numerics.hpp"

namespace expgof {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double mean_by_survival(const AlternativeFamily& f, double theta) {
  QuadOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-12;
  return integrate_half_line([&](double x) { return 1.0 - family_cdf(f, x, theta); }, opts);
}

void require_local(const AlternativeFamily& f, const char* what) {
  if (!f.has_exponential_null())
    throw UnsupportedError(std::string(what) + ": family " + f.name() + " has no Exp(1) member at theta = 0");
}

}  // namespace

std::string AlternativeFamily::name() const {
  switch (id) {
    case FamilyId::Weibull: return "weibull";
    case FamilyId::Gamma: return "gamma";
    case FamilyId::HalfNormal: return "halfnormal";
    case FamilyId::Uniform: return "uniform";
    case FamilyId::Chen: return "chen";
    case FamilyId::LFR: return "lfr";
    case FamilyId::EV: return "ev";
    case FamilyId::LogNormal: return "lognormal";
    case FamilyId::Dhillon: return "dhillon";
    case FamilyId::EMNW: {
      std::ostringstream os;
      os << "emnw" << beta;
      return os.str();
    }
  }
  return "unknown";
}

AlternativeFamily AlternativeFamily::parse(const std::string& text) {
  const std::string s = lower(text);
  if (s == "weibull" || s == "w") return {FamilyId::Weibull};
  if (s == "gamma" || s == "g") return {FamilyId::Gamma};
  if (s == "halfnormal" || s == "hn") return {FamilyId::HalfNormal};
  if (s == "uniform" || s == "u") return {FamilyId::Uniform};
  if (s == "chen" || s == "ch") return {FamilyId::Chen};
  if (s == "lfr" || s == "lf") return {FamilyId::LFR};
  if (s == "ev") return {FamilyId::EV};
  if (s == "lognormal" || s == "ln") return {FamilyId::LogNormal};
  if (s == "dhillon" || s == "dl") return {FamilyId::Dhillon};
  if (s.rfind("emnw", 0) == 0) {
    std::string rest = s.substr(4);
    rest.erase(std::remove_if(rest.begin(), rest.end(), [](char c) { return c == '(' || c == ')'; }), rest.end());
    AlternativeFamily f{FamilyId::EMNW};
    if (!rest.empty()) {
      try {
        std::size_t used = 0;
        f.beta = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(rest);
      } catch (const std::exception&) {
        throw DomainError("unknown family '" + text + "'");
      }
      if (!(f.beta > 1.0)) throw DomainError("EMNW requires beta > 1");
    }
    return f;
  }
  throw DomainError("unknown family '" + text + "'");
}

std::vector<AlternativeFamily> local_families() {
  return {{FamilyId::Weibull}, {FamilyId::Gamma}, {FamilyId::LFR}, {FamilyId::EMNW, 3.0}};
}

bool AlternativeFamily::has_exponential_null() const {
  return id == FamilyId::Weibull || id == FamilyId::Gamma || id == FamilyId::LFR || id == FamilyId::EMNW;
}

bool AlternativeFamily::uses_theta() const { return id != FamilyId::HalfNormal && id != FamilyId::Uniform; }

double AlternativeFamily::theta_min() const {
  switch (id) {
    case FamilyId::Weibull:
    case FamilyId::Gamma: return -1.0;
    case FamilyId::LFR:
    case FamilyId::EMNW: return 0.0;
    case FamilyId::HalfNormal:
    case FamilyId::Uniform: return -std::numeric_limits<double>::infinity();
    default: return 0.0;
  }
}

double AlternativeFamily::theta_max() const {
  if (id == FamilyId::EMNW) return 1.0 / (beta - 1.0);
  return std::numeric_limits<double>::infinity();
}

bool AlternativeFamily::theta_min_inclusive() const { return id == FamilyId::LFR || id == FamilyId::EMNW; }

void AlternativeFamily::check_theta(double theta) const {
  if (!uses_theta()) return;
  const bool low_ok = theta_min_inclusive() ? theta >= theta_min() : theta > theta_min();
  if (!std::isfinite(theta) || !low_ok || theta > theta_max()) {
    std::ostringstream os;
    os << "theta = " << theta << " outside the domain of family " << name() << " ("
       << (theta_min_inclusive() ? "[" : "(") << theta_min() << ", " << theta_max() << "])";
    throw DomainError(os.str());
  }
}

double family_density(const AlternativeFamily& f, double x, double theta) {
  f.check_theta(theta);
  if (x < 0.0) return 0.0;
  switch (f.id) {
    case FamilyId::Weibull: {
      const double k = 1.0 + theta;
      if (x == 0.0) return k < 1.0 ? std::numeric_limits<double>::infinity() : (k == 1.0 ? 1.0 : 0.0);
      return k * std::pow(x, theta) * std::exp(-std::pow(x, k));
    }
    case FamilyId::Gamma: {
      const double k = 1.0 + theta;
      if (x == 0.0) return k < 1.0 ? std::numeric_limits<double>::infinity() : (k == 1.0 ? 1.0 : 0.0);
      return std::exp(theta * std::log(x) - x - std::lgamma(k));
    }
    case FamilyId::HalfNormal: return std::sqrt(2.0 / kPi) * std::exp(-0.5 * x * x);
    case FamilyId::Uniform: return x <= 1.0 ? 1.0 : 0.0;
    case FamilyId::Chen: {
      if (x == 0.0) return theta < 1.0 ? std::numeric_limits<double>::infinity() : (theta == 1.0 ? 2.0 : 0.0);
      const double p = std::pow(x, theta);
      return 2.0 * theta * std::pow(x, theta - 1.0) * std::exp(p + 2.0 * (1.0 - std::exp(p)));
    }
    case FamilyId::LFR: return (1.0 + theta * x) * std::exp(-x - 0.5 * theta * x * x);
    case FamilyId::EV: return std::exp((1.0 - std::exp(x)) / theta + x) / theta;
    case FamilyId::LogNormal: {
      if (x == 0.0) return 0.0;
      const double l = std::log(x);
      return std::exp(-l * l / (2.0 * theta * theta)) / (x * theta * std::sqrt(2.0 * kPi));
    }
    case FamilyId::Dhillon: {
      const double l = std::log1p(x);
      return (theta + 1.0) / (1.0 + x) * std::pow(l, theta) * std::exp(-std::pow(l, theta + 1.0));
    }
    case FamilyId::EMNW: return (1.0 + theta) * std::exp(-x) - theta * f.beta * std::exp(-f.beta * x);
  }
  return 0.0;
}

double family_cdf(const AlternativeFamily& f, double x, double theta) {
  f.check_theta(theta);
  if (x <= 0.0) return 0.0;
  switch (f.id) {
    case FamilyId::Weibull: return -std::expm1(-std::pow(x, 1.0 + theta));
    case FamilyId::Gamma: return boost::math::gamma_p(1.0 + theta, x);
    case FamilyId::HalfNormal: return boost::math::erf(x / std::sqrt(2.0));
    case FamilyId::Uniform: return std::min(x, 1.0);
    case FamilyId::Chen: return -std::expm1(-2.0 * std::expm1(std::pow(x, theta)));
    case FamilyId::LFR: return -std::expm1(-x - 0.5 * theta * x * x);
    case FamilyId::EV: return -std::expm1(-std::expm1(x) / theta);
    case FamilyId::LogNormal: return 0.5 * boost::math::erfc(-std::log(x) / (theta * std::sqrt(2.0)));
    case FamilyId::Dhillon: return -std::expm1(-std::pow(std::log1p(x), theta + 1.0));
    case FamilyId::EMNW: return (1.0 + theta) * -std::expm1(-x) - theta * -std::expm1(-f.beta * x);
  }
  return 0.0;
}

double family_mean(const AlternativeFamily& f, double theta) {
  f.check_theta(theta);
  switch (f.id) {
    case FamilyId::Weibull: return std::tgamma(1.0 + 1.0 / (1.0 + theta));
    case FamilyId::Gamma: return 1.0 + theta;
    case FamilyId::HalfNormal: return std::sqrt(2.0 / kPi);
    case FamilyId::Uniform: return 0.5;
    case FamilyId::LogNormal: return std::exp(0.5 * theta * theta);
    case FamilyId::EMNW: return (1.0 + theta) - theta / f.beta;
    case FamilyId::Dhillon:
      if (!(theta > 0.0)) throw DomainError("dhillon: mean diverges for theta <= 0");
      return mean_by_survival(f, theta);
    case FamilyId::Chen:
    case FamilyId::LFR:
    case FamilyId::EV: return mean_by_survival(f, theta);
  }
  return 0.0;
}

double density_theta_deriv_at_zero(const AlternativeFamily& f, double x) {
  require_local(f, "density_theta_deriv_at_zero");
  if (x < 0.0) throw DomainError("density_theta_deriv_at_zero: x must be non-negative");
  const double e = std::exp(-x);
  switch (f.id) {
    case FamilyId::Weibull: {
      if (x == 0.0) return -std::numeric_limits<double>::infinity();
      const double l = std::log(x);
      return e * (1.0 + l - x * l);
    }
    case FamilyId::Gamma:
      if (x == 0.0) return -std::numeric_limits<double>::infinity();
      return e * (std::log(x) + kEulerGamma);
    case FamilyId::LFR: return e * (x - 0.5 * x * x);
    case FamilyId::EMNW: return e - f.beta * std::exp(-f.beta * x);
    default: break;
  }
  return 0.0;
}

double cdf_theta_deriv_at_zero(const AlternativeFamily& f, double x) {
  require_local(f, "cdf_theta_deriv_at_zero");
  if (x <= 0.0) return 0.0;
  const double e = std::exp(-x);
  switch (f.id) {
    case FamilyId::Weibull: return x * std::log(x) * e;
    case FamilyId::Gamma:
      // int_0^x e^{-u}(log u + gamma) du
      return -e * std::log(x) + expint_ei(-x) - kEulerGamma * e;
    case FamilyId::LFR: return 0.5 * x * x * e;
    case FamilyId::EMNW: return std::exp(-f.beta * x) - e;
    default: break;
  }
  return 0.0;
}

double mean_theta_deriv_at_zero(const AlternativeFamily& f) {
  require_local(f, "mean_theta_deriv_at_zero");
  switch (f.id) {
    case FamilyId::Weibull: return -(1.0 - kEulerGamma);
    case FamilyId::Gamma: return 1.0;
    case FamilyId::LFR: return -1.0;
    case FamilyId::EMNW: return 1.0 - 1.0 / f.beta;
    default: break;
  }
  return 0.0;
}

double family_quantile(const AlternativeFamily& f, double u, double theta) {
  f.check_theta(theta);
  if (!(u > 0.0 && u < 1.0)) throw DomainError("family_quantile: u must lie in (0, 1)");
  const double l = -std::log1p(-u);
  switch (f.id) {
    case FamilyId::Weibull: return std::pow(l, 1.0 / (1.0 + theta));
    case FamilyId::Gamma: return boost::math::gamma_p_inv(1.0 + theta, u);
    case FamilyId::HalfNormal: return std::sqrt(2.0) * boost::math::erf_inv(u);
    case FamilyId::Uniform: return u;
    case FamilyId::Chen: return std::pow(std::log1p(0.5 * l), 1.0 / theta);
    case FamilyId::LFR: return 2.0 * l / (1.0 + std::sqrt(1.0 + 2.0 * theta * l));
    case FamilyId::EV: return std::log1p(theta * l);
    case FamilyId::LogNormal: return std::exp(-theta * std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u));
    case FamilyId::Dhillon: return std::expm1(std::pow(l, 1.0 / (theta + 1.0)));
    case FamilyId::EMNW: {
      // F is increasing on the domain; bracket then bisect with Newton steps.
      double lo = 0.0, hi = std::max(1.0, 2.0 * l + 1.0);
      while (family_cdf(f, hi, theta) < u) hi *= 2.0;
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        const double fx = family_cdf(f, x, theta) - u;
        if (fx > 0.0) hi = x; else lo = x;
        const double d = family_density(f, x, theta);
        double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-12 * std::max(1.0, x) || hi - lo < 1e-14) return next;
        x = next;
      }
      return x;
    }
  }
  return 0.0;
}

std::vector<double> sample_alternative(const AlternativeFamily& f, double theta, std::size_t n, RngStream& rng) {
  f.check_theta(theta);
  std::vector<double> out(n);
  switch (f.id) {
    case FamilyId::Gamma: {
      std::gamma_distribution<double> dist(1.0 + theta, 1.0);
      for (auto& x : out) {
        do {
          x = dist(rng.engine());
        } while (!(x > 0.0));
      }
      return out;
    }
    case FamilyId::HalfNormal:
      for (auto& x : out) x = std::abs(rng.normal());
      return out;
    case FamilyId::LogNormal:
      for (auto& x : out) x = std::exp(theta * rng.normal());
      return out;
    default:
      for (auto& x : out) x = family_quantile(f, rng.uniform(), theta);
      return out;
  }
}

}  // namespace expgof
