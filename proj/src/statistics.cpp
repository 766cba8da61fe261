#include "expgof/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "expgof/errors.hpp"
#include "expgof/expint.hpp"

namespace expgof {
namespace {

constexpr StatName kAll[] = {StatName::MD,  StatName::LD,  StatName::EP,  StatName::CO,  StatName::GINI, StatName::MO,
                             StatName::KS,  StatName::CVM, StatName::AD,  StatName::BH,  StatName::HE,   StatName::W,
                             StatName::HM1, StatName::HM2, StatName::MP,  StatName::JP,  StatName::JD};

void require_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("tuning parameter a must be a positive finite real");
}

double l2_vstat(L2Kind kind, const std::vector<double>& y, double a) {
  const std::size_t n = y.size();
  double diag = 0.0, off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag += l2_kernel(kind, y[i], y[i], a);
    for (std::size_t j = i + 1; j < n; ++j) off += l2_kernel(kind, y[i], y[j], a);
  }
  const double nn = static_cast<double>(n);
  return (diag + 2.0 * off) / (nn * nn);
}

double he_vstat(const std::vector<double>& y, double a) {
  const std::size_t n = y.size();
  const double nn = static_cast<double>(n);
  double single = 0.0, pair = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    single += expint_s(a + y[i]);
    pair += 1.0 / (a + 2.0 * y[i]);
    for (std::size_t j = i + 1; j < n; ++j) pair += 2.0 / (a + y[i] + y[j]);
  }
  return 1.0 + a * expint_s(a) + 2.0 * single / nn + pair / (nn * nn);
}

// Pairwise distances |Y_i - Y_j| over all ordered pairs, as (value, multiplicity).
void distance_multiset(const std::vector<double>& z, std::vector<double>& d, std::vector<double>& w) {
  const std::size_t n = z.size();
  d.assign(1, 0.0);
  w.assign(1, static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      d.push_back(std::abs(z[j] - z[i]));
      w.push_back(2.0);
    }
}

double mp_stat(const ScaledSample& s, double a) {
  const auto& y = s.values;
  const std::size_t n = y.size();
  const double nn = static_cast<double>(n);
  std::vector<double> d, w;
  distance_multiset(s.sorted, d, w);
  double t1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t1 += 1.0 / (2.0 * y[i] + a);
    for (std::size_t j = i + 1; j < n; ++j) t1 += 2.0 / (y[i] + y[j] + a);
  }
  double t2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d.size(); ++k) t2 += w[k] / (y[i] + d[k] + a);
  double t3 = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    t3 += w[k] * w[k] / (2.0 * d[k] + a);
    for (std::size_t l = k + 1; l < d.size(); ++l) t3 += 2.0 * w[k] * w[l] / (d[k] + d[l] + a);
  }
  const double n2 = nn * nn;
  return t1 / n2 - 2.0 * t2 / (n2 * nn) + t3 / (n2 * n2);
}

double jp_stat(const ScaledSample& s, double a) {
  const auto& z = s.sorted;
  const std::size_t n = z.size();
  const double nn = static_cast<double>(n);
  double first = 0.0, second = static_cast<double>(n) / a;
  for (std::size_t i = 0; i < n; ++i) {
    first += 1.0 / (z[i] + a);
    for (std::size_t j = i + 1; j < n; ++j) second += 2.0 / (z[j] - z[i] + a);
  }
  return first / nn - second / (nn * nn);
}

double jd_stat(const ScaledSample& s, double a) {
  const auto& z = s.sorted;
  const double nn = static_cast<double>(z.size());
  double first = 0.0, second = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    first += 1.0 / (z[i] + a);
    second += s.min_weights[i] / (2.0 * z[i] + a);
  }
  return first / nn - second;
}

double classical_scaled(StatName name, const ScaledSample& s) {
  const auto& z = s.sorted;
  const std::size_t n = z.size();
  const double nn = static_cast<double>(n);
  switch (name) {
    case StatName::EP: {
      double acc = 0.0;
      for (double v : z) acc += std::exp(-v);
      return std::sqrt(48.0) * (acc / nn - 0.5);
    }
    case StatName::CO: {
      double acc = 0.0;
      for (double v : z) acc += (1.0 - v) * std::log(v);
      return 1.0 + acc / nn;
    }
    case StatName::GINI: {
      if (n < 2) throw DomainError("GINI requires at least two observations");
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += (2.0 * static_cast<double>(i + 1) - nn - 1.0) * z[i];
      return std::abs(2.0 * acc / (2.0 * nn * (nn - 1.0)) - 0.5);
    }
    case StatName::MO: {
      double acc = 0.0;
      for (double v : z) acc += std::log(v);
      return std::abs(kEulerGamma + acc / nn);
    }
    case StatName::KS: {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double f = -std::expm1(-z[i]);
        d = std::max({d, static_cast<double>(i + 1) / nn - f, f - static_cast<double>(i) / nn});
      }
      return d;
    }
    case StatName::CVM: return l2_vstat(L2Kind::CVM, s.values, 0.0);
    case StatName::AD: return l2_vstat(L2Kind::AD, s.values, 0.0);
    default: break;
  }
  throw UnsupportedError("compute_classical: " + stat_name(name) + " is not a classical statistic");
}

double laplace_scaled(StatName name, const ScaledSample& s, double a) {
  require_a(a);
  switch (name) {
    case StatName::BH: return l2_vstat(L2Kind::BH, s.values, a);
    case StatName::HE: return he_vstat(s.values, a);
    case StatName::W: return l2_vstat(L2Kind::W, s.values, a);
    case StatName::HM1: return l2_vstat(L2Kind::HM1, s.values, a);
    case StatName::HM2: return l2_vstat(L2Kind::HM2, s.values, a);
    case StatName::MP: return mp_stat(s, a);
    case StatName::JP: return jp_stat(s, a);
    case StatName::JD: return jd_stat(s, a);
    default: break;
  }
  throw UnsupportedError("compute_laplace_family: " + stat_name(name) + " is not a Laplace-transform statistic");
}

}  // namespace

std::string stat_name(StatName name) {
  switch (name) {
    case StatName::MD: return "MD";
    case StatName::LD: return "LD";
    case StatName::EP: return "EP";
    case StatName::CO: return "CO";
    case StatName::GINI: return "GINI";
    case StatName::MO: return "MO";
    case StatName::KS: return "KS";
    case StatName::CVM: return "CVM";
    case StatName::AD: return "AD";
    case StatName::BH: return "BH";
    case StatName::HE: return "HE";
    case StatName::W: return "W";
    case StatName::HM1: return "HM1";
    case StatName::HM2: return "HM2";
    case StatName::MP: return "MP";
    case StatName::JP: return "JP";
    case StatName::JD: return "JD";
  }
  return "?";
}

StatName parse_stat_name(const std::string& text) {
  std::string up = text;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (StatName n : kAll)
    if (stat_name(n) == up) return n;
  throw DomainError("unknown statistic '" + text + "'");
}

std::vector<StatName> all_stat_names() { return {std::begin(kAll), std::end(kAll)}; }

bool stat_tuned(StatName name) {
  switch (name) {
    case StatName::MD:
    case StatName::LD:
    case StatName::BH:
    case StatName::HE:
    case StatName::W:
    case StatName::HM1:
    case StatName::HM2:
    case StatName::MP:
    case StatName::JP:
    case StatName::JD: return true;
    default: return false;
  }
}

std::optional<L2Kind> as_l2(StatName name) {
  switch (name) {
    case StatName::CVM: return L2Kind::CVM;
    case StatName::AD: return L2Kind::AD;
    case StatName::BH: return L2Kind::BH;
    case StatName::HE: return L2Kind::HE;
    case StatName::W: return L2Kind::W;
    case StatName::HM1: return L2Kind::HM1;
    case StatName::HM2: return L2Kind::HM2;
    default: return std::nullopt;
  }
}

StatisticId StatisticId::make(StatName name, std::optional<double> a) {
  if (stat_tuned(name)) {
    if (!a) throw DomainError("statistic " + stat_name(name) + " requires a tuning parameter a");
    require_a(*a);
  } else if (a) {
    throw DomainError("statistic " + stat_name(name) + " takes no tuning parameter");
  }
  return {name, a};
}

double StatisticId::tuning() const {
  if (!a) throw DomainError("statistic " + stat_name(name) + " has no tuning parameter");
  return *a;
}

std::string StatisticId::label() const {
  std::ostringstream os;
  os << stat_name(name);
  if (a) os << "(a=" << *a << ")";
  return os.str();
}

double stat_md(const ScaledSample& s, double a) {
  require_a(a);
  const auto& z = s.sorted;
  const auto& w = s.min_weights;
  const std::size_t n = z.size();
  const double nn = static_cast<double>(n);
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    t1 += 1.0 / (2.0 * z[i] + a);
    t3 += w[i] * w[i] / (4.0 * z[i] + a);
    for (std::size_t j = i + 1; j < n; ++j) {
      t1 += 2.0 / (z[i] + z[j] + a);
      t3 += 2.0 * w[i] * w[j] / (2.0 * z[i] + 2.0 * z[j] + a);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < n; ++j) inner += w[j] / (z[i] + 2.0 * z[j] + a);
    t2 += inner;
  }
  return t1 / (nn * nn) - 2.0 * t2 / nn + t3;
}

double vn_process(const ScaledSample& s, double a, double t) {
  const auto& z = s.sorted;
  const auto& w = s.min_weights;
  const double inv_n = 1.0 / static_cast<double>(z.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double e = std::exp(-t * z[i]);
    acc += e * (inv_n - w[i] * e);
  }
  return acc * std::exp(-a * t);
}

Maximum stat_ld_argmax(const ScaledSample& s, double a) {
  require_a(a);
  const double upper = 40.0 / a;
  return maximize_scan([&](double t) { return std::abs(vn_process(s, a, t)); }, 1e-4, upper, 512, 1e-8, true);
}

double stat_ld(const ScaledSample& s, double a) { return stat_ld_argmax(s, a).value; }

double compute_classical(StatName name, std::span<const double> raw) {
  return classical_scaled(name, scale_sample(raw));
}

double compute_laplace_family(StatName name, std::span<const double> raw, double a) {
  if (raw.size() < 2) throw DomainError(stat_name(name) + " requires at least two observations");
  return laplace_scaled(name, scale_sample(raw), a);
}

double evaluate(const StatisticId& id, const ScaledSample& s) {
  switch (id.name) {
    case StatName::MD: return stat_md(s, id.tuning());
    case StatName::LD: return stat_ld(s, id.tuning());
    case StatName::EP:
    case StatName::CO:
    case StatName::GINI:
    case StatName::MO:
    case StatName::KS:
    case StatName::CVM:
    case StatName::AD: return classical_scaled(id.name, s);
    default: return laplace_scaled(id.name, s, id.tuning());
  }
}

double evaluate(const StatisticId& id, std::span<const double> raw) { return evaluate(id, scale_sample(raw)); }

}  // namespace expgof
